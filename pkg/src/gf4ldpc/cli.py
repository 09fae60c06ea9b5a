"""Command-line surface: build, validate, simulate, sweep.

Construction inputs come from TOML config files naming the prime, the
generator matrices (row-major [a, b, c, d] quadruples), and, for the
coset family, the subgroup generators.  Codes travel between commands
as QPC files.
"""

from __future__ import annotations

import argparse
import sys
import time

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import __version__
from .cayley_code import CayleySpec, build_48_code, validate_cayley
from .coset_code import GenericSpec, build_tanner, validate_spec
from .decoder import DecoderConfig
from .matgroup import Mat2, enumerate_group, subgroup_closure
from .sim import SweepSpec, rows_to_csv, run_point, run_sweep
from .stabilizer import ParityCheck, read_qpc, write_qpc
from .tanner import four_cycle_graph


def _mat(entries, p: int) -> Mat2:
    if len(entries) != 4:
        raise ValueError(f"matrix needs 4 entries [a, b, c, d], got {entries}")
    return Mat2.make(*(int(x) for x in entries), p)


def _element(group, parts, p: int) -> int:
    if len(parts) != group.nparts:
        raise ValueError(
            f"group kind {group.kind} expects {group.nparts} matrices per "
            f"element, got {len(parts)}")
    return group.index_of(tuple(_mat(m, p) for m in parts))


def _load_config(path: str) -> dict:
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def _build_from_config(family: str, config: dict):
    p = int(config["p"])
    if family == "cayley":
        spec = CayleySpec(p, _mat(config["g_plus"], p), _mat(config["g_minus"], p))
        report = validate_cayley(spec)
        return build_48_code(spec), report
    kind = config.get("kind", "psl2xpsl2")
    group = enumerate_group(kind, p)
    h_gens = [_element(group, el, p) for el in config.get("h_generators", [])]
    k_gens = [_element(group, el, p) for el in config.get("k_generators", [])]
    spec = GenericSpec(
        group=group,
        h_members=subgroup_closure(group, h_gens),
        k_members=subgroup_closure(group, k_gens),
        g_omega=[_element(group, el, p) for el in config["g_omega"]],
        g_omega_bar=[_element(group, el, p) for el in config["g_omega_bar"]],
    )
    report = validate_spec(spec)
    if not report.all_passed:
        print(report, file=sys.stderr)
        raise SystemExit("coset spec validation failed; not building")
    return build_tanner(spec), report


def _cmd_build(args) -> int:
    config = _load_config(args.config)
    family = config.get("family", args.family)
    if family != args.family:
        raise SystemExit(
            f"config family {family!r} does not match --family {args.family!r}")
    t0 = time.time()
    graph, report = _build_from_config(args.family, config)
    pc = ParityCheck.from_tanner(graph)
    write_qpc(pc, args.out)
    a, b = graph.regularity()
    print(report)
    print(f"built n={pc.n} m={pc.m} regular=({a},{b}) -> {args.out} "
          f"[{time.time() - t0:.1f}s]")
    return 0


def _cmd_validate(args) -> int:
    pc = read_qpc(args.qpc)
    t0 = time.time()
    violations = pc.verify_orthogonality()
    summary = pc.summary()
    _, deps = pc.logical_count()
    print(f"n={summary.n} m={summary.m}")
    print(f"orthogonality violations: {len(violations)}"
          + (f" (first: {violations[0]})" if violations else ""))
    if summary.a is not None:
        print(f"regular: ({summary.a},{summary.b})")
    else:
        print(f"irregular: column degrees vary (row degree "
              f"{summary.b if summary.b is not None else 'varies'})")
    print(f"k={summary.k} dependencies={deps} rate={summary.rate:.6g}")
    fc = four_cycle_graph(pc.to_tanner())
    print(f"4-cycle graph: min degree {fc.min_degree}, max degree "
          f"{fc.max_degree}, edges {fc.n_edges}")
    witness = pc.find_omega_cycle_error()
    if witness is None:
        print("w-cycle witness: none found")
    else:
        print(f"w-cycle witness: weight {witness.weight} "
              f"(zero syndrome, outside stabilizer; "
              f"candidate #{witness.cycles_tried})")
    print(f"validated in {time.time() - t0:.1f}s")
    return 0 if not violations else 1


def _decoder_config(args) -> DecoderConfig:
    return DecoderConfig(algorithm=args.algo, max_iterations=args.max_iter,
                         min_sum_scale=args.min_sum_scale,
                         message_clamp=args.clamp)


def _cmd_simulate(args) -> int:
    pc = read_qpc(args.qpc).freeze()
    spec = SweepSpec(code=pc, p_list=[args.p], trials=args.trials,
                     decoder=_decoder_config(args), master_seed=args.seed,
                     workers=args.workers)
    rows = run_sweep(spec)
    sys.stdout.write(rows_to_csv(rows))
    return 0


def _cmd_sweep(args) -> int:
    p_list = [float(tok) for tok in args.p_list.split(",") if tok]
    pc = read_qpc(args.qpc).freeze()
    spec = SweepSpec(code=pc, p_list=p_list, trials=args.trials,
                     decoder=_decoder_config(args), master_seed=args.seed,
                     workers=args.workers)
    csv_text = rows_to_csv(run_sweep(spec))
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(csv_text)
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(csv_text)
    return 0


def _add_decoder_flags(sp) -> None:
    sp.add_argument("--algo", choices=["min_sum", "sum_product"],
                    default="min_sum")
    sp.add_argument("--max-iter", type=int, default=100)
    sp.add_argument("--min-sum-scale", type=float, default=1.0)
    sp.add_argument("--clamp", type=float, default=30.0)
    sp.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gf4ldpc",
        description="Group-constructed GF(4) quantum LDPC codes: build, "
                    "validate, and simulate over the depolarizing channel.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a code and write a QPC file")
    b.add_argument("--family", choices=["coset", "cayley"], required=True)
    b.add_argument("--config", required=True, help="TOML construction spec")
    b.add_argument("--out", required=True, help="output QPC path")
    b.set_defaults(func=_cmd_build)

    v = sub.add_parser("validate", help="audit a QPC file")
    v.add_argument("qpc")
    v.set_defaults(func=_cmd_validate)

    s = sub.add_parser("simulate", help="Monte-Carlo at one channel parameter")
    s.add_argument("qpc")
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    _add_decoder_flags(s)
    s.set_defaults(func=_cmd_simulate)

    w = sub.add_parser("sweep", help="Monte-Carlo across a list of parameters")
    w.add_argument("qpc")
    w.add_argument("--p-list", required=True, help="comma-separated, ascending")
    w.add_argument("--trials", type=int, required=True)
    w.add_argument("--seed", type=int, required=True)
    w.add_argument("--out", help="CSV output path (default: stdout)")
    _add_decoder_flags(w)
    w.set_defaults(func=_cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())

#!/usr/bin/env python3
"""Throughput comparison of the decoder kernels (compiled vs python).

Builds both reference codes, decodes a fixed batch of sampled syndromes
with every available backend, and reports ms/trial, iteration counts,
and outcome agreement between backends.

Usage: python benchmarks/bench_decoder.py [--trials N] [--p P] [--algo A]
"""

import argparse
import time

import numpy as np

from gf4ldpc._kernels import available_backends
from gf4ldpc.cayley_code import build_48_code, cayley_p13_spec
from gf4ldpc.coset_code import build_tanner, psl2xpsl2_612_spec
from gf4ldpc.decoder import DecoderConfig, DepolarizingPrior, decode
from gf4ldpc.matgroup import enumerate_group
from gf4ldpc.sim import sample_depolarizing, trial_rng
from gf4ldpc.stabilizer import ParityCheck


def build_codes():
    group = enumerate_group("psl2xpsl2", 5)
    coset = ParityCheck.from_tanner(build_tanner(psl2xpsl2_612_spec(group)))
    cayley = ParityCheck.from_tanner(build_48_code(cayley_p13_spec()))
    return {"(6,12) n=3600": coset.freeze(), "(4,8) n=8736": cayley.freeze()}


def bench(code, name, trials, p, algo, seed):
    prior = DepolarizingPrior(p)
    cfg = DecoderConfig(algorithm=algo, max_iterations=100)
    errors = [sample_depolarizing(code.n, p, trial_rng(seed, 0, t))
              for t in range(trials)]
    syndromes = [code.syndrome(e) for e in errors]
    results = {}
    for backend, fn in sorted(available_backends().items()):
        t0 = time.time()
        iters = 0
        estimates = []
        for s in syndromes:
            res = decode(code, s, prior, cfg, kernel=fn)
            iters += res.iterations
            estimates.append(res.estimate)
        dt = time.time() - t0
        results[backend] = (dt, iters, estimates)
        print(f"{name}  {backend:9s}  {dt / trials * 1e3:8.2f} ms/trial  "
              f"{iters / trials:6.1f} iters/trial  total {dt:6.2f}s")
    names = sorted(results)
    if len(names) == 2:
        est_a, est_b = results[names[0]][2], results[names[1]][2]
        agree = sum(np.array_equal(a, b) for a, b in zip(est_a, est_b))
        speedup = results[names[1]][0] / max(results[names[0]][0], 1e-9)
        print(f"{name}  agreement {agree}/{trials} estimates identical; "
              f"{names[0]} is {speedup:.1f}x faster than {names[1]}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--p", type=float, default=0.02)
    ap.add_argument("--algo", choices=["min_sum", "sum_product"],
                    default="min_sum")
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    backends = available_backends()
    print(f"available kernels: {sorted(backends)}")
    if len(backends) == 1:
        print("(compiled kernel missing; comparing python against itself "
              "is skipped)")
    for name, code in build_codes().items():
        bench(code, name, args.trials, args.p, args.algo, args.seed)


if __name__ == "__main__":
    main()

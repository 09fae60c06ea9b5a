"""Generic (a,b)-regular code construction from group/subgroup data.

Qubits are the cosets xH of a subgroup H, checks the cosets yK of a
larger subgroup K.  A generator set G, split into an w-part and a
W-part, draws the labeled edges: qubit xH meets check yK with label w
whenever xgH intersects yK for some g in the w-part (and likewise for
W).  Three properties of (G_w, G_W, H, K) make the resulting rows
pairwise orthogonal:

1. each part is closed under inverses,
2. every w-generator commutes with every W-generator,
3. products g*h*k determine g uniquely (no multiple edges).

Property 3 is equivalent to: for distinct generators g, g', the element
g'^-1 * g never lies in the product set H*K*H, which is how
:func:`validate_spec` tests it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

from .matgroup import CosetTable, GroupTable, coset_partition, is_subgroup
from .tanner import TannerGraph
from .validation import ValidationReport
from . import gf4


class ConstructionError(Exception):
    """A structural invariant failed while building a code."""


@dataclass
class GenericSpec:
    """Inputs of the generic construction, as element indices in ``group``."""

    group: GroupTable
    h_members: List[int]
    k_members: List[int]
    g_omega: List[int]
    g_omega_bar: List[int]

    @property
    def generators(self) -> List[int]:
        return list(self.g_omega) + list(self.g_omega_bar)


def validate_spec(spec: GenericSpec) -> ValidationReport:
    """Report on every structural property the construction relies on."""
    g = spec.group
    report = ValidationReport()

    report.add("h_is_subgroup", is_subgroup(g, spec.h_members))
    report.add("k_is_subgroup", is_subgroup(g, spec.k_members))
    report.add("k_larger_than_h", len(spec.k_members) > len(spec.h_members),
               f"|H|={len(spec.h_members)}, |K|={len(spec.k_members)}")

    gw, gwb = set(spec.g_omega), set(spec.g_omega_bar)
    report.add("parts_disjoint", not (gw & gwb))

    inv_w = all(g.inv(x) in gw for x in gw)
    inv_wb = all(g.inv(x) in gwb for x in gwb)
    report.add("omega_part_closed_under_inverse", inv_w)
    report.add("omega_bar_part_closed_under_inverse", inv_wb)

    commute = all(g.mul(a, b) == g.mul(b, a) for a in gw for b in gwb)
    report.add("cross_parts_commute", commute)

    # Generation of the whole group by G_w u G_W.
    from .matgroup import subgroup_closure
    generated = len(subgroup_closure(g, spec.generators)) == g.order
    report.add("generators_generate_group", generated)

    # Unique-generator property via the product set H*K*H: for distinct
    # g, g' we need inv(g') * g outside it.
    hkh = set()
    for h1 in spec.h_members:
        for k in spec.k_members:
            hk = g.mul(h1, k)
            for h2 in spec.h_members:
                hkh.add(g.mul(hk, h2))
    gens = spec.generators
    unique = True
    offender = ""
    for i, gi in enumerate(gens):
        for j, gj in enumerate(gens):
            if i == j:
                continue
            if g.mul(g.inv(gj), gi) in hkh:
                unique = False
                offender = f"generators #{i} and #{j}"
                break
        if not unique:
            break
    report.add("products_determine_generator", unique, offender)
    return report


def build_tanner(spec: GenericSpec) -> TannerGraph:
    """Build the labeled Tanner graph; requires a validated spec.

    Qubit i is the i-th coset of H (ordered by canonical representative),
    check j the j-th coset of K.  Edge discovery walks (qubit rep x,
    generator g, h in H) and locates the K-coset of x*g*h.  A (qubit,
    check) pair reached through two different generators certifies a
    violation of the unique-generator property and aborts the build.
    """
    g = spec.group
    h_table = coset_partition(g, spec.h_members)
    k_table = coset_partition(g, spec.k_members)

    labeled_gens = [(idx, gf4.OMEGA) for idx in spec.g_omega]
    labeled_gens += [(idx, gf4.OMEGA_BAR) for idx in spec.g_omega_bar]

    edges = {}
    for qi in range(len(h_table)):
        x = h_table.rep_of[qi]
        for gen, label in labeled_gens:
            xg = g.mul(x, gen)
            targets = {int(k_table.coset_of[g.mul(xg, h)]) for h in spec.h_members}
            for ci in targets:
                prev = edges.get((qi, ci))
                if prev is not None:
                    raise ConstructionError(
                        f"edge ({qi},{ci}) reached via two generators "
                        f"(labels {gf4.SYMBOL_CHARS[prev]} and {gf4.SYMBOL_CHARS[label]}): "
                        "unique-generator property violated")
                edges[(qi, ci)] = label

    return TannerGraph(
        n_qubits=len(h_table),
        n_checks=len(k_table),
        edges=[(q, c, label) for (q, c), label in sorted(edges.items())],
    )


def degree_formulas(spec: GenericSpec) -> tuple[int, int]:
    """Expected (qubit, check) degrees |G||H|/|HnK| and |G||K|/|HnK|."""
    hk = len(set(spec.h_members) & set(spec.k_members))
    ng = len(spec.generators)
    return (ng * len(spec.h_members) // hk, ng * len(spec.k_members) // hk)


def psl2xpsl2_612_spec(group: GroupTable) -> GenericSpec:
    """The rate-1/2 (6,12) instance over PSL2(F5) x PSL2(F5).

    H is trivial; K is generated by the order-2 pair u = ([[1,2],[-1,-1]],
    same); the w-generators act on the first factor, the W-generators on
    the second, so the two parts commute elementwise.
    """
    from .matgroup import Mat2, subgroup_closure

    if group.kind != "psl2xpsl2" or group.p != 5:
        raise ValueError("this instance is defined over psl2xpsl2 with p=5")
    p = 5
    ident = Mat2.identity(p)
    u = group.index_of((Mat2.make(1, 2, -1, -1, p), Mat2.make(1, 2, -1, -1, p)))
    mats = [Mat2.make(1, 1, 0, 1, p), Mat2.make(0, -1, 1, 0, p), Mat2.make(1, -1, 0, 1, p)]
    g_omega = [group.index_of((m, ident)) for m in mats]
    g_omega_bar = [group.index_of((ident, m)) for m in mats]
    return GenericSpec(
        group=group,
        h_members=[group.identity],
        k_members=subgroup_closure(group, [u]),
        g_omega=g_omega,
        g_omega_bar=g_omega_bar,
    )

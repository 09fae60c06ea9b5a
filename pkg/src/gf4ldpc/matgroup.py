"""Finite 2x2 matrix groups over prime fields, with coset machinery.

Supports the three group kinds the code constructions draw from:

* ``psl2``      -- SL2(F_p) modulo its center {I, -I}
* ``psl2xpsl2`` -- the direct product of two copies of the above
* ``det4``      -- {M in GL2(F_p) : (det M)^2 = +-1}, which requires
                   p = 1 (mod 4) so that sqrt(-1) exists in F_p

Group elements are tuples of :class:`Mat2` (one entry per direct
factor), canonicalised so each abstract element has a unique stored
representative.  Element order is lexicographic on the concatenated
matrix entries; every downstream qubit/check index derives from it, so
constructions are bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

KINDS = ("psl2", "psl2xpsl2", "det4")


@dataclass(frozen=True)
class Mat2:
    """2x2 matrix over F_p with entries reduced to [0, p)."""

    a: int
    b: int
    c: int
    d: int
    p: int

    @classmethod
    def make(cls, a: int, b: int, c: int, d: int, p: int) -> "Mat2":
        """Build from possibly-signed integers, reducing mod p."""
        return cls(a % p, b % p, c % p, d % p, p)

    @classmethod
    def identity(cls, p: int) -> "Mat2":
        return cls(1, 0, 0, 1, p)

    def __mul__(self, other: "Mat2") -> "Mat2":
        if self.p != other.p:
            raise ValueError(f"mixed moduli {self.p} and {other.p}")
        p = self.p
        return Mat2(
            (self.a * other.a + self.b * other.c) % p,
            (self.a * other.b + self.b * other.d) % p,
            (self.c * other.a + self.d * other.c) % p,
            (self.c * other.b + self.d * other.d) % p,
            p,
        )

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.p

    def inv(self) -> "Mat2":
        det = self.det()
        if det == 0:
            raise ValueError(f"singular matrix {self.entries()} mod {self.p}")
        dinv = pow(det, self.p - 2, self.p)
        p = self.p
        return Mat2(
            (self.d * dinv) % p,
            (-self.b * dinv) % p,
            (-self.c * dinv) % p,
            (self.a * dinv) % p,
            p,
        )

    def neg(self) -> "Mat2":
        p = self.p
        return Mat2((-self.a) % p, (-self.b) % p, (-self.c) % p, (-self.d) % p, p)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def is_identity(self) -> bool:
        return self.entries() == (1, 0, 0, 1)


def psl2_canonicalize(m: Mat2) -> Mat2:
    """The lexicographically smaller of {m, -m}; requires det(m) = 1."""
    if m.det() != 1:
        raise ValueError(f"psl2 representative must have det 1, got {m.det()}")
    neg = m.neg()
    return m if m.entries() <= neg.entries() else neg


def sqrt_minus_one(p: int) -> int:
    """Smallest square root of -1 in F_p; requires p = 1 (mod 4)."""
    if p % 4 != 1:
        raise ValueError(f"sqrt(-1) does not exist mod {p} (p % 4 != 1)")
    for x in range(2, p):
        if x * x % p == p - 1:
            return x
    raise AssertionError("unreachable for prime p = 1 (mod 4)")


Element = tuple[Mat2, ...]


class GroupTable:
    """Enumerated finite matrix group with index-level arithmetic.

    Stored elements are canonical representatives (PSL2 factors are sign
    quotiented); ``elements`` is sorted lexicographically on the
    concatenated entry tuples, and all arithmetic works on indices into
    that list.
    """

    def __init__(self, kind: str, p: int, elements: Sequence[Element]):
        self.kind = kind
        self.p = p
        self.elements: tuple[Element, ...] = tuple(elements)
        self._index: dict[Element, int] = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise ValueError("duplicate canonical elements in group enumeration")
        self.identity = self._index[self.canonicalize(
            tuple(Mat2.identity(p) for _ in self.elements[0])
        )]

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def nparts(self) -> int:
        return len(self.elements[0])

    def canonicalize(self, parts: Element) -> Element:
        if self.kind in ("psl2", "psl2xpsl2"):
            return tuple(psl2_canonicalize(m) for m in parts)
        return parts

    def find(self, parts: Iterable[Mat2]) -> int | None:
        """Index of an element given any representative, or None."""
        try:
            return self._index.get(self.canonicalize(tuple(parts)))
        except ValueError:
            return None

    def index_of(self, parts: Iterable[Mat2]) -> int:
        idx = self.find(parts)
        if idx is None:
            raise KeyError(f"element not in group {self.kind}(p={self.p})")
        return idx

    def mul(self, i: int, j: int) -> int:
        gi, gj = self.elements[i], self.elements[j]
        return self._index[self.canonicalize(tuple(a * b for a, b in zip(gi, gj)))]

    def inv(self, i: int) -> int:
        return self._index[self.canonicalize(tuple(m.inv() for m in self.elements[i]))]

    def det_parts(self, i: int) -> tuple[int, ...]:
        return tuple(m.det() for m in self.elements[i])


def _enumerate_psl2(p: int) -> list[Mat2]:
    seen = set()
    out = []
    for a in range(p):
        for b in range(p):
            for c in range(p):
                # a*d - b*c = 1 fixes d when a != 0; otherwise scan d.
                if a:
                    d = (1 + b * c) * pow(a, p - 2, p) % p
                    cands = (d,)
                else:
                    cands = tuple(d for d in range(p) if (-b * c) % p == 1)
                for d in cands:
                    m = psl2_canonicalize(Mat2(a, b, c, d, p))
                    if m.entries() not in seen:
                        seen.add(m.entries())
                        out.append(m)
    out.sort(key=Mat2.entries)
    return out


def _enumerate_det4(p: int) -> list[Mat2]:
    i = sqrt_minus_one(p)
    wanted = {1, p - 1, i, p - i}
    out = []
    for a in range(p):
        for b in range(p):
            for c in range(p):
                bc = b * c
                for d in range(p):
                    if (a * d - bc) % p in wanted:
                        out.append(Mat2(a, b, c, d, p))
    out.sort(key=Mat2.entries)
    return out


def enumerate_group(kind: str, p: int) -> GroupTable:
    """Enumerate a supported group kind; see module docstring for kinds."""
    if kind not in KINDS:
        raise ValueError(f"unknown group kind {kind!r}; expected one of {KINDS}")
    if kind == "psl2":
        return GroupTable(kind, p, [(m,) for m in _enumerate_psl2(p)])
    if kind == "psl2xpsl2":
        base = _enumerate_psl2(p)
        return GroupTable(kind, p, [(m1, m2) for m1 in base for m2 in base])
    return GroupTable(kind, p, [(m,) for m in _enumerate_det4(p)])


def subgroup_closure(group: GroupTable, generators: Sequence[int]) -> list[int]:
    """Indices of the subgroup generated by the given element indices."""
    gens = set(generators)
    gens.update(group.inv(g) for g in generators)
    members = {group.identity}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = group.mul(x, g)
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(members)


def is_subgroup(group: GroupTable, members: Sequence[int]) -> bool:
    """Closure under product and inverse, with the identity present."""
    mset = set(members)
    if group.identity not in mset:
        return False
    if len(mset) == group.order:
        return True
    for x in members:
        if group.inv(x) not in mset:
            return False
        for y in members:
            if group.mul(x, y) not in mset:
                return False
    return True


class CosetTable:
    """Left cosets xH of a subgroup, indexed by ascending canonical rep."""

    def __init__(self, group: GroupTable, subgroup: Sequence[int]):
        if not is_subgroup(group, subgroup):
            raise ValueError("coset partition requires a subgroup "
                             "(closed under product and inverse, with identity)")
        self.group = group
        self.subgroup = sorted(subgroup)
        coset_of = np.full(group.order, -1, dtype=np.int64)
        cosets: list[list[int]] = []
        reps: list[int] = []
        for x in range(group.order):
            if coset_of[x] >= 0:
                continue
            cid = len(cosets)
            members = sorted(group.mul(x, h) for h in self.subgroup)
            for m in members:
                if coset_of[m] >= 0:
                    raise AssertionError("cosets not disjoint; subgroup check failed")
                coset_of[m] = cid
            cosets.append(members)
            reps.append(x)
        self.cosets = cosets
        self.rep_of = reps
        self.coset_of = coset_of

    def __len__(self) -> int:
        return len(self.cosets)


def coset_partition(group: GroupTable, subgroup: Sequence[int]) -> CosetTable:
    return CosetTable(group, subgroup)


def coset_intersection(xh: Sequence[int], yk: Sequence[int]) -> list[int]:
    """Sorted common element indices of two cosets (possibly empty)."""
    return sorted(set(xh) & set(yk))

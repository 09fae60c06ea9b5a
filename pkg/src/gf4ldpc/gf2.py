"""Bit-packed GF(2) linear algebra on Python int bitsets.

Rows are arbitrary-precision ints; XOR is word-parallel, so rank and
span membership on the 2n-bit symplectic images stay cheap even at
n = 8736.  An :class:`EchelonBasis` is built once per matrix and reused
for every membership query (one per Monte-Carlo trial).
"""

from __future__ import annotations

from typing import Iterable, List


class EchelonBasis:
    """Row-echelon basis of a GF(2) row space, keyed by pivot bit."""

    def __init__(self, rows: Iterable[int] = ()) -> None:
        self._by_pivot: dict[int, int] = {}
        for row in rows:
            self.add(row)

    @property
    def rank(self) -> int:
        return len(self._by_pivot)

    def reduce(self, vec: int) -> int:
        """Reduce vec against the basis; zero iff vec is in the span."""
        by_pivot = self._by_pivot
        while vec:
            pivot = vec.bit_length() - 1
            row = by_pivot.get(pivot)
            if row is None:
                break
            vec ^= row
        return vec

    def add(self, row: int) -> bool:
        """Insert a row; returns True if it enlarged the span."""
        row = self.reduce(row)
        if row == 0:
            return False
        self._by_pivot[row.bit_length() - 1] = row
        return True

    def contains(self, vec: int) -> bool:
        return self.reduce(vec) == 0


def rank(rows: List[int]) -> int:
    """Rank over GF(2) of rows given as int bitsets."""
    return EchelonBasis(rows).rank


def in_rowspan(vec: int, rows: List[int]) -> bool:
    """Membership of vec in the GF(2) row span."""
    return EchelonBasis(rows).contains(vec)

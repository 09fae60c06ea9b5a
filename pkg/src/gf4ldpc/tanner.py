"""Labeled bipartite qubit/check graphs and their 4-cycle structure."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Tuple

from .gf4 import HERM_TABLE, SYMBOL_CHARS


@dataclass
class TannerGraph:
    """Bipartite qubit-check graph with GF(4) edge labels.

    ``edges`` holds (qubit, check, label) triples with labels in
    {1, 2, 3} (w, W, y).  The graph must be simple: one edge per
    (qubit, check) pair.
    """

    n_qubits: int
    n_checks: int
    edges: List[Tuple[int, int, int]]
    by_qubit: List[List[Tuple[int, int]]] = field(init=False, repr=False)
    by_check: List[List[Tuple[int, int]]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        by_qubit: List[List[Tuple[int, int]]] = [[] for _ in range(self.n_qubits)]
        by_check: List[List[Tuple[int, int]]] = [[] for _ in range(self.n_checks)]
        seen = set()
        for q, c, label in self.edges:
            if not (0 <= q < self.n_qubits and 0 <= c < self.n_checks):
                raise ValueError(f"edge ({q},{c}) out of range")
            if label not in (1, 2, 3):
                raise ValueError(f"edge label must be a nonzero symbol, got {label}")
            if (q, c) in seen:
                raise ValueError(f"duplicate edge ({q},{c})")
            seen.add((q, c))
            by_qubit[q].append((c, label))
            by_check[c].append((q, label))
        for adj in by_qubit:
            adj.sort()
        for adj in by_check:
            adj.sort()
        self.by_qubit = by_qubit
        self.by_check = by_check

    def qubit_degrees(self) -> List[int]:
        return [len(adj) for adj in self.by_qubit]

    def check_degrees(self) -> List[int]:
        return [len(adj) for adj in self.by_check]

    def regularity(self) -> Tuple[int | None, int | None]:
        """(a, b) when all qubit / check degrees are constant, else None."""
        qd = set(self.qubit_degrees())
        cd = set(self.check_degrees())
        return (qd.pop() if len(qd) == 1 else None,
                cd.pop() if len(cd) == 1 else None)

    def label_counts_by_qubit(self) -> List[dict]:
        out = []
        for adj in self.by_qubit:
            counts: dict = {}
            for _, label in adj:
                counts[SYMBOL_CHARS[label]] = counts.get(SYMBOL_CHARS[label], 0) + 1
            out.append(counts)
        return out


@dataclass
class FourCycleGraph:
    """Graph on qubits joining pairs that sit on a labeled 4-cycle."""

    n: int
    adjacency: List[set]

    @property
    def degrees(self) -> List[int]:
        return [len(s) for s in self.adjacency]

    @property
    def min_degree(self) -> int:
        return min(self.degrees) if self.n else 0

    @property
    def max_degree(self) -> int:
        return max(self.degrees) if self.n else 0

    @property
    def n_edges(self) -> int:
        return sum(self.degrees) // 2


def four_cycle_graph(t: TannerGraph) -> FourCycleGraph:
    """Join qubits u, v that share two checks where both qubits' own
    label pairs anticommute (the commutation-forced 4-cycle pattern)."""
    shared: dict = {}
    for c, adj in enumerate(t.by_check):
        for i in range(len(adj)):
            qi, li = adj[i]
            for j in range(i + 1, len(adj)):
                qj, lj = adj[j]
                shared.setdefault((qi, qj), []).append((li, lj))
    adjacency: List[set] = [set() for _ in range(t.n_qubits)]
    for (u, v), labels in shared.items():
        if len(labels) < 2:
            continue
        found = False
        for i in range(len(labels)):
            for j in range(i + 1, len(labels)):
                if (HERM_TABLE[labels[i][0]][labels[j][0]]
                        and HERM_TABLE[labels[i][1]][labels[j][1]]):
                    found = True
                    break
            if found:
                break
        if found:
            adjacency[u].add(v)
            adjacency[v].add(u)
    return FourCycleGraph(t.n_qubits, adjacency)

"""Matrix-level stabilizer operations on sparse GF(4) parity checks.

The central object is :class:`ParityCheck`: rows are stabilizer
generators as sparse GF(4) vectors.  It provides the orthogonality
audit, syndrome computation, the GF(2) rank that yields the logical
qubit count, span membership for trial classification, and the
low-weight undetectable-error search on the w-labeled subgraph.

Heavy queries go through caches built once by :meth:`ParityCheck.freeze`:
a bit-packed echelon basis of the symplectic row image, and flat edge
arrays consumed by the decoder kernels.  After freezing, everything is
read-only and safe to share across worker processes.
"""

from __future__ import annotations

import io
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import gf4
from .gf2 import EchelonBasis
from .tanner import TannerGraph

Row = List[Tuple[int, int]]


@dataclass
class CodeSummary:
    """Block length, generator count, logical count, and regularity."""

    n: int
    m: int
    k: int
    a: int | None
    b: int | None
    rate: float


@dataclass
class KernelArrays:
    """Flat CSR views of the Tanner graph for the decoder kernels.

    Edges are sorted by (check, column).  ``q_edge`` lists edge ids
    grouped by qubit; both pointer arrays have the usual CSR layout.
    """

    edge_qubit: np.ndarray
    edge_label: np.ndarray
    check_ptr: np.ndarray
    q_ptr: np.ndarray
    q_edge: np.ndarray
    max_check_degree: int
    max_qubit_degree: int


@dataclass
class OmegaCycleWitness:
    """Undetectable non-stabilizer error supported on a w-labeled cycle."""

    error: np.ndarray
    weight: int
    cycles_tried: int


class ParityCheck:
    """Sparse GF(4) parity-check matrix (rows = stabilizer generators)."""

    def __init__(self, n: int, rows: Sequence[Row]):
        if n <= 0:
            raise ValueError("n must be positive")
        self.n = n
        norm_rows: List[Row] = []
        for ri, row in enumerate(rows):
            if not row:
                raise ValueError(f"row {ri} is empty")
            row = sorted((int(c), int(s)) for c, s in row)
            cols = [c for c, _ in row]
            if cols[0] < 0 or cols[-1] >= n:
                raise ValueError(f"row {ri} has column outside [0, {n})")
            if len(set(cols)) != len(cols):
                raise ValueError(f"row {ri} repeats a column")
            if any(s not in (1, 2, 3) for _, s in row):
                raise ValueError(f"row {ri} has a symbol outside {{w, W, y}}")
            norm_rows.append(row)
        self.rows: List[Row] = norm_rows
        self._basis: Optional[EchelonBasis] = None
        self._rank: Optional[int] = None
        self._kernel: Optional[KernelArrays] = None
        self._csr: Optional[tuple] = None

    @property
    def m(self) -> int:
        return len(self.rows)

    # ── construction helpers ─────────────────────────────────────────

    @classmethod
    def from_tanner(cls, t: TannerGraph) -> "ParityCheck":
        rows: List[Row] = [[(q, label) for q, label in adj] for adj in t.by_check]
        return cls(t.n_qubits, rows)

    def to_tanner(self) -> TannerGraph:
        edges = [(c, r, s) for r, row in enumerate(self.rows) for c, s in row]
        return TannerGraph(self.n, self.m, edges)

    def row_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.n, dtype=np.uint8)
        for c, s in self.rows[i]:
            v[c] = s
        return v

    # ── frozen caches ────────────────────────────────────────────────

    def freeze(self) -> "ParityCheck":
        """Build the echelon basis and kernel arrays; returns self."""
        self._ensure_basis()
        self.kernel_arrays()
        return self

    def _ensure_csr(self):
        if self._csr is None:
            ptr = np.zeros(self.m + 1, dtype=np.int64)
            cols = []
            syms = []
            for i, row in enumerate(self.rows):
                ptr[i + 1] = ptr[i] + len(row)
                cols.extend(c for c, _ in row)
                syms.extend(s for _, s in row)
            self._csr = (ptr,
                         np.array(cols, dtype=np.int64),
                         np.array(syms, dtype=np.uint8))
        return self._csr

    def _ensure_basis(self) -> EchelonBasis:
        if self._basis is None:
            basis = EchelonBasis()
            deps = 0
            for i in range(self.m):
                if not basis.add(gf4.symplectic_int(self.row_vector(i))):
                    deps += 1
            self._basis = basis
            self._rank = self.m - deps
        return self._basis

    def kernel_arrays(self) -> KernelArrays:
        if self._kernel is None:
            ptr, cols, syms = self._ensure_csr()
            edge_qubit = cols.astype(np.int32)
            edge_label = syms.astype(np.uint8)
            check_ptr = ptr.astype(np.int32)
            order = np.argsort(edge_qubit, kind="stable").astype(np.int32)
            q_counts = np.bincount(edge_qubit, minlength=self.n)
            q_ptr = np.zeros(self.n + 1, dtype=np.int32)
            np.cumsum(q_counts, out=q_ptr[1:])
            self._kernel = KernelArrays(
                edge_qubit=edge_qubit,
                edge_label=edge_label,
                check_ptr=check_ptr,
                q_ptr=q_ptr,
                q_edge=order,
                max_check_degree=int(np.diff(check_ptr).max()) if self.m else 0,
                max_qubit_degree=int(q_counts.max()) if self.n else 0,
            )
        return self._kernel

    # ── core queries ─────────────────────────────────────────────────

    def syndrome(self, e) -> np.ndarray:
        """Commutation bits between an error vector and every row."""
        e = np.asarray(e, dtype=np.uint8)
        if e.shape != (self.n,):
            raise ValueError(f"error length {e.shape} != n={self.n}")
        ptr, cols, syms = self._ensure_csr()
        bits = gf4.HERM_ARR[e[cols], syms]
        return np.bitwise_xor.reduceat(bits, ptr[:-1]).astype(np.uint8)

    def verify_orthogonality(self) -> List[Tuple[int, int]]:
        """Row pairs with nonzero trace inner product (empty = valid)."""
        by_col: defaultdict = defaultdict(list)
        for i, row in enumerate(self.rows):
            for c, s in row:
                by_col[c].append((i, s))
        acc: defaultdict = defaultdict(int)
        for entries in by_col.values():
            for a in range(len(entries)):
                ia, sa = entries[a]
                for b in range(a + 1, len(entries)):
                    ib, sb = entries[b]
                    h = gf4.HERM_TABLE[sa][sb]
                    if h:
                        acc[(ia, ib)] ^= 1
        return sorted(pair for pair, bit in acc.items() if bit)

    def logical_count(self) -> Tuple[int, int]:
        """(k, row dependencies): k = n - GF(2) rank of the symplectic image."""
        self._ensure_basis()
        return self.n - self._rank, self.m - self._rank

    def in_stabilizer(self, r) -> bool:
        """Membership of r in the GF(2) span of the rows' symplectic image."""
        r = np.asarray(r, dtype=np.uint8)
        if r.shape != (self.n,):
            raise ValueError(f"vector length {r.shape} != n={self.n}")
        return self._ensure_basis().contains(gf4.symplectic_int(r))

    def summary(self) -> CodeSummary:
        k, _ = self.logical_count()
        t = self.to_tanner()
        a, b = t.regularity()
        return CodeSummary(n=self.n, m=self.m, k=k, a=a, b=b, rate=k / self.n)

    # ── undetectable-error witness ───────────────────────────────────

    def find_omega_cycle_error(self, max_candidates: int = 512) -> Optional[OmegaCycleWitness]:
        """Search short cycles of the w-labeled subgraph for an error that
        has zero syndrome but is not in the stabilizer span.

        A cycle qubit has both of its w-edges on the cycle, so an error
        carrying the conjugate symbol W on the cycle's qubits pairs its
        nonzero trace contributions two per on-cycle check (herm(W, w) = 1,
        herm(W, W) = 0) and is undetectable.  Candidate cycles come from
        breadth-first search from every qubit (shortest first); each is
        verified before being returned.  Returns None when the w-subgraph
        is acyclic or no candidate verifies.
        """
        cycles = _short_omega_cycles(self, max_candidates)
        for idx, (_, verts) in enumerate(cycles):
            error = np.zeros(self.n, dtype=np.uint8)
            qubits = [v for v in verts if v < self.n]
            error[qubits] = gf4.OMEGA_BAR
            if self.syndrome(error).any():
                continue
            if self.in_stabilizer(error):
                continue
            return OmegaCycleWitness(error=error, weight=len(qubits),
                                     cycles_tried=idx + 1)
        return None


def _short_omega_cycles(pc: ParityCheck, max_candidates: int):
    """Shortest simple cycles of the bipartite w-subgraph.

    Vertices 0..n-1 are qubits, n..n+m-1 checks.  Returns a list of
    (length, vertex tuple) sorted ascending, deduplicated up to
    rotation/reflection, truncated to max_candidates.
    """
    n, m = pc.n, pc.m
    adj: List[List[int]] = [[] for _ in range(n + m)]
    for r, row in enumerate(pc.rows):
        for c, s in row:
            if s == gf4.OMEGA:
                adj[c].append(n + r)
                adj[n + r].append(c)

    found: dict = {}
    best = 2 * (n + m) + 2
    for start in range(n):
        if not adj[start]:
            continue
        cutoff = best // 2 + 1
        dist = {start: 0}
        parent = {start: -1}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            if dist[u] >= cutoff:
                continue
            for w in adj[u]:
                if w == parent[u]:
                    continue
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                    continue
                # Non-tree edge: close a cycle through the BFS tree.
                path_u = _root_path(parent, u)
                path_w = _root_path(parent, w)
                common = set(path_u) & set(path_w)
                cu = [v for v in path_u if v not in common]
                cw = [v for v in path_w if v not in common]
                lca_chain = [v for v in path_u if v in common]
                cycle = cu + [lca_chain[0]] + cw[::-1]
                if len(cycle) < 3:
                    continue
                key = _canonical_cycle(cycle)
                if key not in found:
                    found[key] = len(cycle)
                    best = min(best, len(cycle))
    ordered = sorted(((length, key) for key, length in found.items()))
    return ordered[:max_candidates]


def _root_path(parent: dict, v: int) -> List[int]:
    path = []
    while v != -1:
        path.append(v)
        v = parent[v]
    return path


def _canonical_cycle(cycle: List[int]) -> Tuple[int, ...]:
    """Lexicographically least rotation/reflection of a vertex cycle."""
    k = len(cycle)
    best = None
    for seq in (cycle, cycle[::-1]):
        for r in range(k):
            cand = tuple(seq[r:] + seq[:r])
            if best is None or cand < best:
                best = cand
    return best


# ── QPC text format ──────────────────────────────────────────────────

_QPC_CHARS = {1: "w", 2: "W", 3: "y"}
_QPC_SYMS = {c: s for s, c in _QPC_CHARS.items()}


def qpc_dumps(pc: ParityCheck) -> str:
    """Serialize to the QPC v1 sparse text format (LF endings)."""
    out = io.StringIO()
    out.write(f"QPC v1 n={pc.n} m={pc.m}\n")
    for row in pc.rows:
        out.write(" ".join(f"{c}{_QPC_CHARS[s]}" for c, s in row))
        out.write("\n")
    return out.getvalue()


def qpc_loads(text: str) -> ParityCheck:
    """Parse the QPC v1 format, validating the header and every token."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ValueError("empty QPC input")
    header = lines[0].split()
    if (len(header) != 4 or header[0] != "QPC" or header[1] != "v1"
            or not header[2].startswith("n=") or not header[3].startswith("m=")):
        raise ValueError(f"bad QPC header: {lines[0]!r}")
    n = int(header[2][2:])
    m = int(header[3][2:])
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} rows, found {len(lines) - 1}")
    rows: List[Row] = []
    for ln, line in enumerate(lines[1:], start=2):
        row: Row = []
        prev = -1
        for tok in line.split(" "):
            if not tok:
                raise ValueError(f"line {ln}: empty token (check spacing)")
            sym = tok[-1]
            if sym not in _QPC_SYMS:
                raise ValueError(f"line {ln}: bad symbol in token {tok!r}")
            col = int(tok[:-1])
            if col <= prev:
                raise ValueError(f"line {ln}: columns not strictly ascending")
            prev = col
            row.append((col, _QPC_SYMS[sym]))
        rows.append(row)
    return ParityCheck(n, rows)


def write_qpc(pc: ParityCheck, path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(qpc_dumps(pc))


def read_qpc(path) -> ParityCheck:
    with open(path, "r", newline="") as fh:
        return qpc_loads(fh.read())

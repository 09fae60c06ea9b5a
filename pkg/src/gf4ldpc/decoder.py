"""Syndrome decoding on the labeled Tanner graph.

``decode`` runs SUM-PRODUCT or MIN-SUM message passing in their
syndrome form: it estimates the most likely depolarizing error
compatible with an observed syndrome.  ``brute_force_decode`` is the
exact maximum-likelihood oracle for tiny instances, used to validate
the iterative decoder.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import gf4
from ._kernels import run_bp as _default_kernel
from .stabilizer import ParityCheck

ALGORITHMS = ("sum_product", "min_sum")


@dataclass(frozen=True)
class DepolarizingPrior:
    """Per-qubit error probability p: X, Y, Z each occur with p/3."""

    p: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.p < 0.75:
            raise ValueError(f"depolarizing probability must be in [0, 3/4), got {self.p}")

    def probs(self) -> np.ndarray:
        """(P[0], P[w], P[W], P[1]) in symbol-code order."""
        third = self.p / 3.0
        return np.array([1.0 - self.p, third, third, third])

    def log_probs(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log(self.probs())


@dataclass
class DecoderConfig:
    algorithm: str = "min_sum"
    max_iterations: int = 100
    min_sum_scale: float = 1.0
    message_clamp: float = 30.0

    def __post_init__(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be positive")
        if not 0.0 < self.min_sum_scale <= 1.0:
            raise ValueError("min_sum_scale must be in (0, 1]")
        if self.message_clamp <= 0:
            raise ValueError("message_clamp must be positive")


@dataclass
class DecodeResult:
    estimate: np.ndarray
    converged: bool
    iterations: int


def edge_indicator(label: int, e: int) -> int:
    """Commutation bit of error symbol e against a nonzero edge label."""
    if label not in (1, 2, 3):
        raise ValueError(f"edge label must be nonzero, got {label}")
    return gf4.herm_pair(e, label)


def decode(pc: ParityCheck, s, prior: DepolarizingPrior,
           cfg: Optional[DecoderConfig] = None, kernel=None) -> DecodeResult:
    """Estimate an error with the observed syndrome via message passing.

    Flooding schedule; per-iteration hard decisions take the per-qubit
    argmax with ties resolved toward the lower symbol code (identity
    first).  Stops as soon as the hard decision reproduces the target
    syndrome, or at the iteration cap with converged=False.
    """
    cfg = cfg or DecoderConfig()
    s = np.asarray(s, dtype=np.uint8)
    if s.shape != (pc.m,):
        raise ValueError(f"syndrome length {s.shape} != m={pc.m}")
    ka = pc.kernel_arrays()
    fn = kernel or _default_kernel
    hard, converged, iterations = fn(
        ka.edge_qubit, ka.edge_label, ka.check_ptr, s, prior.log_probs(),
        cfg.max_iterations, cfg.algorithm == "min_sum",
        cfg.min_sum_scale, cfg.message_clamp, pc.n)
    return DecodeResult(estimate=np.asarray(hard, dtype=np.uint8),
                        converged=bool(converged), iterations=int(iterations))


_BRUTE_FORCE_MAX_N = 14


def _enumerate_syndromes(pc: ParityCheck, chunk: np.ndarray) -> np.ndarray:
    """Syndrome of every error row in chunk, packed into ints."""
    out = np.zeros(chunk.shape[0], dtype=np.int64)
    for j, row in enumerate(pc.rows):
        cols = np.array([c for c, _ in row])
        syms = np.array([s for _, s in row])
        bits = np.bitwise_xor.reduce(gf4.HERM_ARR[chunk[:, cols], syms], axis=1)
        out |= bits.astype(np.int64) << j
    return out


def _error_chunks(n: int, chunk_rows: int = 1 << 16):
    """Yield (start, block) of all 4^n errors in lexicographic order."""
    total = 4 ** n
    shifts = 2 * np.arange(n - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk_rows):
        idx = np.arange(start, min(start + chunk_rows, total), dtype=np.int64)
        block = ((idx[:, None] >> shifts[None, :]) & 3).astype(np.uint8)
        yield start, block


def brute_force_decode(pc: ParityCheck, s, prior: DepolarizingPrior) -> np.ndarray:
    """Exact most-likely error for one syndrome (4^n enumeration).

    Maximum likelihood equals minimum weight for the depolarizing prior;
    ties resolve to the lexicographically least symbol sequence in the
    code order (0, w, W, y).
    """
    if pc.n > _BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force refused for n={pc.n} > {_BRUTE_FORCE_MAX_N}")
    s = np.asarray(s, dtype=np.uint8)
    target = int(np.sum(s.astype(np.int64) << np.arange(pc.m)))
    best: Optional[np.ndarray] = None
    best_w = pc.n + 1
    for _, block in _error_chunks(pc.n):
        synd = _enumerate_syndromes(pc, block)
        hits = np.nonzero(synd == target)[0]
        if hits.size == 0:
            continue
        weights = np.count_nonzero(block[hits], axis=1)
        arg = int(np.argmin(weights))
        if weights[arg] < best_w:
            best_w = int(weights[arg])
            best = block[hits[arg]].copy()
    if best is None:
        raise ValueError("no error matches the syndrome (inconsistent input)")
    return best


def brute_force_table(pc: ParityCheck, prior: DepolarizingPrior) -> np.ndarray:
    """Most-likely error for every syndrome at once: (2^m, n) array.

    Minimises the packed key (weight, enumeration index), so ties break
    to the lexicographically least error exactly as in
    :func:`brute_force_decode`.
    """
    if pc.n > _BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force refused for n={pc.n} > {_BRUTE_FORCE_MAX_N}")
    n_syn = 1 << pc.m
    best_key = np.full(n_syn, np.iinfo(np.int64).max, dtype=np.int64)
    for start, block in _error_chunks(pc.n):
        synd = _enumerate_syndromes(pc, block)
        weights = np.count_nonzero(block, axis=1).astype(np.int64)
        keys = (weights << 40) | (start + np.arange(block.shape[0], dtype=np.int64))
        np.minimum.at(best_key, synd, keys)
    if np.any(best_key == np.iinfo(np.int64).max):
        raise ValueError("some syndromes are unreachable (inconsistent matrix)")
    idx = best_key & ((1 << 40) - 1)
    shifts = 2 * np.arange(pc.n - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] >> shifts[None, :]) & 3).astype(np.uint8)

"""Depolarizing-channel Monte-Carlo harness.

Trials are independent and reproducible: every trial draws its errors
from a generator seeded by (master seed, sweep-point index, trial
index), so counts do not depend on worker scheduling and a rerun with
the same seed produces byte-identical CSV output.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np

from .decoder import DecoderConfig, DepolarizingPrior, decode
from .stabilizer import ParityCheck

CSV_HEADER = ("channel_p,trials,successes,logical_errors,"
              "detected_failures,bler,ci_low,ci_high,master_seed")

_Z95 = 1.959963984540054


class TrialOutcome(Enum):
    SUCCESS = "success"
    LOGICAL_ERROR = "logical_error"
    DETECTED_FAILURE = "detected_failure"


@dataclass
class StatsRow:
    channel_p: float
    trials: int
    successes: int
    logical_errors: int
    detected_failures: int
    bler: Optional[float]
    ci_low: Optional[float]
    ci_high: Optional[float]
    master_seed: int

    def to_csv(self) -> str:
        def num(x):
            return "" if x is None else f"{x:.6g}"

        return (f"{self.channel_p:g},{self.trials},{self.successes},"
                f"{self.logical_errors},{self.detected_failures},"
                f"{num(self.bler)},{num(self.ci_low)},{num(self.ci_high)},"
                f"{self.master_seed}")


@dataclass
class SweepSpec:
    code: ParityCheck
    p_list: Sequence[float]
    trials: int
    decoder: DecoderConfig = field(default_factory=DecoderConfig)
    master_seed: int = 0
    workers: int = 1

    def __post_init__(self) -> None:
        ps = list(self.p_list)
        if not ps:
            raise ValueError("p_list must be nonempty")
        if any(not 0.0 < p < 0.75 for p in ps):
            raise ValueError("every p must lie in (0, 3/4)")
        if any(b <= a for a, b in zip(ps, ps[1:])):
            raise ValueError("p_list must be strictly ascending")
        if self.trials < 0:
            raise ValueError("trials must be nonnegative")
        if self.workers < 1:
            raise ValueError("workers must be positive")


def wilson_interval(failures: int, trials: int, z: float = _Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials == 0:
        raise ValueError("undefined for zero trials")
    phat = failures / trials
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = (z / denom) * np.sqrt(phat * (1 - phat) / trials
                                 + z * z / (4 * trials * trials))
    # the bounds are exactly 0 / 1 at the extremes; avoid FP cancellation
    lo = 0.0 if failures == 0 else max(0.0, center - half)
    hi = 1.0 if failures == trials else min(1.0, center + half)
    return lo, hi


def trial_rng(master_seed: int, p_index: int, trial_index: int) -> np.random.Generator:
    """Counter-style independent stream for one trial."""
    ss = np.random.SeedSequence(entropy=master_seed,
                                spawn_key=(p_index, trial_index))
    return np.random.default_rng(ss)


def sample_depolarizing(n: int, channel_p: float,
                        rng: np.random.Generator) -> np.ndarray:
    """Independent per qubit: 0 w.p. 1-p; each of w, W, y w.p. p/3."""
    if not 0.0 <= channel_p < 0.75:
        raise ValueError(f"channel_p must be in [0, 3/4), got {channel_p}")
    u = rng.random(n)
    e = np.zeros(n, dtype=np.uint8)
    if channel_p > 0.0:
        mask = u >= 1.0 - channel_p
        kind = ((u[mask] - (1.0 - channel_p)) / (channel_p / 3.0)).astype(np.int64)
        e[mask] = np.minimum(kind, 2).astype(np.uint8) + 1
    return e


def run_trial(code: ParityCheck, channel_p: float, cfg: DecoderConfig,
              rng: np.random.Generator,
              forced_error: Optional[np.ndarray] = None) -> TrialOutcome:
    """One sample-decode-classify round; forced_error is a test hook."""
    if forced_error is None:
        error = sample_depolarizing(code.n, channel_p, rng)
    else:
        error = np.asarray(forced_error, dtype=np.uint8)
    s = code.syndrome(error)
    result = decode(code, s, DepolarizingPrior(channel_p), cfg)
    if not result.converged:
        return TrialOutcome.DETECTED_FAILURE
    residual = result.estimate ^ error
    if code.in_stabilizer(residual):
        return TrialOutcome.SUCCESS
    return TrialOutcome.LOGICAL_ERROR


def _count_trials(code, channel_p, cfg, master_seed, p_index, lo, hi):
    succ = log = det = 0
    for t in range(lo, hi):
        outcome = run_trial(code, channel_p, cfg, trial_rng(master_seed, p_index, t))
        if outcome is TrialOutcome.SUCCESS:
            succ += 1
        elif outcome is TrialOutcome.LOGICAL_ERROR:
            log += 1
        else:
            det += 1
    return succ, log, det


_worker_code: Optional[ParityCheck] = None
_worker_cfg: Optional[DecoderConfig] = None


def _init_worker(code: ParityCheck, cfg: DecoderConfig) -> None:
    global _worker_code, _worker_cfg
    _worker_code = code
    _worker_cfg = cfg


def _worker_chunk(args):
    channel_p, master_seed, p_index, lo, hi = args
    return _count_trials(_worker_code, channel_p, _worker_cfg,
                         master_seed, p_index, lo, hi)


def run_point(code: ParityCheck, channel_p: float, trials: int,
              cfg: DecoderConfig, master_seed: int, p_index: int = 0,
              workers: int = 1, _pool=None) -> StatsRow:
    """All trials for one channel parameter, aggregated into a StatsRow."""
    if trials == 0:
        return StatsRow(channel_p, 0, 0, 0, 0, None, None, None, master_seed)
    if workers > 1 and _pool is not None and trials >= 2 * workers:
        bounds = np.linspace(0, trials, 4 * workers + 1).astype(int)
        tasks = [(channel_p, master_seed, p_index, int(lo), int(hi))
                 for lo, hi in zip(bounds[:-1], bounds[1:]) if lo < hi]
        parts = _pool.map(_worker_chunk, tasks)
        succ = sum(p[0] for p in parts)
        log = sum(p[1] for p in parts)
        det = sum(p[2] for p in parts)
    else:
        succ, log, det = _count_trials(code, channel_p, cfg, master_seed,
                                       p_index, 0, trials)
    failures = log + det
    lo, hi = wilson_interval(failures, trials)
    return StatsRow(channel_p, trials, succ, log, det,
                    failures / trials, lo, hi, master_seed)


def run_sweep(spec: SweepSpec) -> List[StatsRow]:
    """Rows in p order; deterministic for a fixed spec and seed."""
    code = spec.code.freeze()
    pool = None
    try:
        if spec.workers > 1 and spec.trials >= 2 * spec.workers:
            ctx = multiprocessing.get_context()
            pool = ctx.Pool(spec.workers, initializer=_init_worker,
                            initargs=(code, spec.decoder))
        return [
            run_point(code, p, spec.trials, spec.decoder, spec.master_seed,
                      p_index=i, workers=spec.workers, _pool=pool)
            for i, p in enumerate(spec.p_list)
        ]
    finally:
        if pool is not None:
            pool.close()
            pool.join()


def rows_to_csv(rows: Sequence[StatsRow]) -> str:
    return "\n".join([CSV_HEADER] + [r.to_csv() for r in rows]) + "\n"

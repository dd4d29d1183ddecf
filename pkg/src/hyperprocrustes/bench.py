"""Monte-Carlo comparison of the alignment estimators under translation noise.

For every ``(d, N, trial)`` cell entry a random isometry ``R*`` is drawn,
source points are lifted standard normals, and target points are
``R* R_{eps_n} x'_n`` with ``eps_n ~ sigma N(0, I)``.  Each trial records
the normalized discrepancy of the ground truth (``baseline``), the
closed-form estimate (``P``), gradient descent from the identity
(``GD``) and gradient descent started from ``P`` (``GDP``).
"""

import dataclasses
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from . import isometry
from .descent import GdConfig, gd_align, refine
from .errors import NumericalError, ValidationError
from .lorentz import lift
from .procrustes import align, normalized_discrepancy

METHODS = ("baseline", "P", "GD", "GDP")
TRIAL_FIELDS = ("d", "N", "trial", "e_baseline", "e_P", "e_GD", "e_GDP",
                "gd_iterations")


@dataclass(frozen=True)
class BenchmarkConfig:
    dims: Tuple[int, ...] = (2, 4)
    sizes: Tuple[int, ...] = (5, 6, 7, 8, 9, 10)
    trials: int = 1000
    noise_sigma: float = 1e-2
    outlier_k: float = 5.0
    seed: int = 0
    gd: GdConfig = field(default_factory=GdConfig)
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "sizes", tuple(int(n) for n in self.sizes))
        if not self.dims or min(self.dims) < 1:
            raise ValidationError("dims must be a nonempty list of integers >= 1")
        if not self.sizes or min(self.sizes) < 1:
            raise ValidationError("sizes must be a nonempty list of integers >= 1")
        if self.trials < 1:
            raise ValidationError("trials must be >= 1")
        if not self.noise_sigma >= 0:
            raise ValidationError("noise_sigma must be >= 0")
        if not self.outlier_k > 0:
            raise ValidationError("outlier_k must be > 0")
        if self.workers < 1:
            raise ValidationError("workers must be >= 1")

    @classmethod
    def from_dict(cls, raw):
        raw = dict(raw)
        unknown = set(raw) - {f.name for f in dataclasses.fields(cls)}
        if unknown:
            raise ValidationError(f"unknown benchmark config keys: {sorted(unknown)}")
        if "gd" in raw and not isinstance(raw["gd"], GdConfig):
            raw["gd"] = GdConfig(**raw["gd"])
        return cls(**raw)

    def to_dict(self):
        out = dataclasses.asdict(self)
        out["dims"] = list(self.dims)
        out["sizes"] = list(self.sizes)
        return out


@dataclass(frozen=True)
class TrialRecord:
    d: int
    N: int
    trial: int
    e_baseline: float
    e_P: float
    e_GD: float
    e_GDP: float
    gd_iterations: int

    def value(self, method):
        return getattr(self, "e_" + method)


def trial_rng(seed, d, n, trial):
    """Independent stream for one trial, keyed by ``(seed, d, N, trial)``."""
    return np.random.default_rng([int(seed) & (2**64 - 1), d, n, trial])


def synth_pair(n, d, sigma, rng):
    """Draw ``(target, source, R_true)`` for one noisy trial."""
    if n < 1 or d < 1:
        raise ValidationError("N and d must be >= 1")
    if not sigma >= 0:
        raise ValidationError("sigma must be >= 0")
    R_true = isometry.random_hunitary(d, rng)
    source = lift(rng.standard_normal((n, d)))
    eps = sigma * rng.standard_normal((n, d))
    noisy = np.stack([isometry.translation_matrix(e) @ x
                      for e, x in zip(eps, source)])
    target = isometry.apply(R_true, noisy)
    return target, source, R_true


def run_trial(d, n, trial, cfg):
    rng = trial_rng(cfg.seed, d, n, trial)
    target, source, R_true = synth_pair(n, d, cfg.noise_sigma, rng)
    e_base = normalized_discrepancy(target, isometry.apply(R_true, source))
    est = align(target, source)
    e_gd, e_gdp, gd_iters = np.inf, np.inf, cfg.gd.max_iters
    try:
        res = gd_align(target, source, cfg.gd)
        gd_iters = res.iterations
        if res.converged:
            e_gd = res.residual
    except (NumericalError, ValidationError, np.linalg.LinAlgError):
        pass
    try:
        res = refine(target, source, est.R_est, cfg.gd)
        if res.converged:
            e_gdp = res.residual
    except (NumericalError, ValidationError, np.linalg.LinAlgError):
        pass
    return TrialRecord(d, n, trial, e_base, est.residual, e_gd, e_gdp, gd_iters)


def _run_cell(args):
    d, n, cfg = args
    return [run_trial(d, n, t, cfg) for t in range(cfg.trials)]


def quartiles(values):
    """Median-exclusive hinges ``(Q1, Q2, Q3)``.

    Q2 is the median; Q1 and Q3 are the medians of the values strictly
    below and strictly above the middle position.  A single value is its
    own three quartiles.
    """
    v = np.sort(np.asarray(values, dtype=float).ravel())
    n = v.shape[0]
    if n == 0:
        raise ValidationError("quartiles of an empty list")
    if n == 1:
        return float(v[0]), float(v[0]), float(v[0])
    half = n // 2
    lower, upper = v[:half], v[n - half:]
    return (float(np.median(lower)), float(np.median(v)),
            float(np.median(upper)))


def count_outliers(values, k=5.0):
    """Number of entries with ``|v - Q2| > k * |Q3 - Q1| / 2``.

    Non-finite entries (failed runs) always count.  With a zero
    interquartile range every value different from the median counts.
    """
    if not k > 0:
        raise ValidationError("k must be positive")
    v = np.asarray(values, dtype=float).ravel()
    q1, q2, q3 = quartiles(v)
    with np.errstate(invalid="ignore"):
        far = np.abs(v - q2) > k * 0.5 * abs(q3 - q1)
    return int(np.sum(far | ~np.isfinite(v)))


def _stats(values, k):
    q1, q2, q3 = quartiles(values)
    count = count_outliers(values, k)
    failed = int(np.sum(~np.isfinite(values)))
    return {"Q1": q1, "Q2": q2, "Q3": q3, "outlier_count": count,
            "outlier_prob": count / len(values), "failed_count": failed}


def summarize(records, k=5.0):
    """Per-cell and pooled quartiles and outlier counts for every method.

    Pooled outlier counts are the sums of the per-cell counts (each cell
    judged against its own quartiles); pooled quartiles are over all
    records of a method.
    """
    cells = {}
    for r in records:
        cells.setdefault((r.d, r.N), []).append(r)
    out_cells = []
    pooled_counts = dict.fromkeys(METHODS, 0)
    pooled_failed = dict.fromkeys(METHODS, 0)
    for (d, n) in sorted(cells):
        recs = cells[(d, n)]
        methods = {}
        for m in METHODS:
            methods[m] = _stats([r.value(m) for r in recs], k)
            pooled_counts[m] += methods[m]["outlier_count"]
            pooled_failed[m] += methods[m]["failed_count"]
        out_cells.append({"d": d, "N": n, "trials": len(recs),
                          "methods": methods})
    total = len(records)
    pooled = {}
    for m in METHODS:
        q1, q2, q3 = quartiles([r.value(m) for r in records])
        pooled[m] = {"Q1": q1, "Q2": q2, "Q3": q3, "trials": total,
                     "outlier_count": pooled_counts[m],
                     "outlier_prob": pooled_counts[m] / total,
                     "failed_count": pooled_failed[m]}
    return {"outlier_k": k, "cells": out_cells, "pooled": pooled}


def run_benchmark(cfg):
    """Run every ``(d, N, trial)`` and return ``(records, summary)``.

    Cells are farmed out to ``cfg.workers`` processes; records come back
    sorted by ``(d, N, trial)`` so the output does not depend on the
    scheduling.
    """
    jobs = [(d, n, cfg) for d in sorted(set(cfg.dims))
            for n in sorted(set(cfg.sizes))]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            chunks = list(pool.map(_run_cell, jobs))
    else:
        chunks = [_run_cell(job) for job in jobs]
    records: List[TrialRecord] = sorted(
        (r for chunk in chunks for r in chunk),
        key=lambda r: (r.d, r.N, r.trial))
    return records, summarize(records, cfg.outlier_k)

"""Seeded multi-run experiments and their summary statistics."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ..benchmarks import FUNCTION_NAMES, get_function, initial_point
from ..optimizer import QGradientConfig, RunResult, optimize, steepest_descent
from ..qcalc import EvalCountedFunction
from .reference import PARAMETERS, default_target

__all__ = [
    "ALGORITHMS",
    "ExperimentSpec",
    "ExperimentSummary",
    "default_config",
    "run_experiment",
    "run_single",
    "summarize",
]

ALGORITHMS = ("qgrad", "sd")


def default_config(name: str, dim: int = 20, **overrides) -> QGradientConfig:
    """Published parameters for ``name`` with the per-function target."""
    if name not in PARAMETERS:
        raise KeyError(f"unknown function {name!r}; valid names: {', '.join(FUNCTION_NAMES)}")
    sigma0, alpha0, beta = PARAMETERS[name]
    kwargs = dict(sigma0=sigma0, alpha0=alpha0, beta=beta, dim=dim, target=default_target(name))
    kwargs.update(overrides)
    return QGradientConfig(**kwargs)


@dataclass(frozen=True)
class ExperimentSpec:
    """What to run: run ``r`` is seeded with ``base_seed + r``.

    ``alpha_max``, ``line_tol`` and ``line_max_iters`` only apply to the
    steepest-descent baseline; it shares ``config.max_evals``,
    ``config.target`` and ``config.fd_step``.
    """

    function: str
    config: QGradientConfig
    runs: int = 50
    base_seed: int = 0
    algorithm: str = "qgrad"
    alpha_max: float = 10.0
    line_tol: float = 1e-10
    line_max_iters: int = 100

    def __post_init__(self):
        if self.function not in FUNCTION_NAMES:
            raise KeyError(
                f"unknown function {self.function!r}; valid names: {', '.join(FUNCTION_NAMES)}"
            )
        if self.runs < 1:
            raise ValueError(f"runs must be at least 1, got {self.runs}")
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}, got {self.algorithm!r}")

    def seed(self, r: int) -> int:
        return self.base_seed + r


@dataclass(frozen=True)
class ExperimentSummary:
    """Aggregate of a set of runs.

    ``best``/``median``/``worst`` are evaluation counts over the successful
    runs only and are ``None`` when no run succeeded.  The median of an even
    count is the lower of the two middle values.
    """

    best: Optional[int]
    median: Optional[int]
    worst: Optional[int]
    success_count: int
    total_runs: int
    f_best_overall: float
    per_run: tuple = field(default=(), repr=False)
    function: Optional[str] = None
    algorithm: Optional[str] = None

    @property
    def success_ratio(self) -> float:
        return self.success_count / self.total_runs


def summarize(results: Sequence[RunResult], function: str | None = None, algorithm: str | None = None) -> ExperimentSummary:
    if len(results) == 0:
        raise ValueError("cannot summarize an empty list of runs")
    evals = sorted(r.evals_used for r in results if r.success)
    if evals:
        best, median, worst = evals[0], evals[(len(evals) - 1) // 2], evals[-1]
    else:
        best = median = worst = None
    finite = [r.best_f for r in results if math.isfinite(r.best_f)]
    f_best = min(finite) if finite else math.inf
    return ExperimentSummary(
        best=best,
        median=median,
        worst=worst,
        success_count=len(evals),
        total_runs=len(results),
        f_best_overall=f_best,
        per_run=tuple(results),
        function=function,
        algorithm=algorithm,
    )


def run_single(spec: ExperimentSpec, r: int) -> RunResult:
    """Execute run ``r`` of ``spec`` with its own RNG and counter."""
    cfg = spec.config
    func = get_function(spec.function, cfg.dim)
    seed = spec.seed(r)
    rng = np.random.default_rng(seed)
    x0 = initial_point(cfg.dim, rng)
    counted = EvalCountedFunction(func.eval, vectorized=True)
    if spec.algorithm == "sd":
        return steepest_descent(
            counted,
            x0,
            alpha_max=spec.alpha_max,
            line_tol=spec.line_tol,
            line_max_iters=spec.line_max_iters,
            max_evals=cfg.max_evals,
            target=cfg.target,
            fd_step=cfg.fd_step,
            basin=func.basin,
            seed=seed,
        )
    return optimize(counted, cfg, x0, rng, basin=func.basin, seed=seed)


def _run_indexed(args):
    spec, r = args
    return run_single(spec, r)


def run_experiment(spec: ExperimentSpec, workers: int = 1) -> ExperimentSummary:
    """Run every seed of ``spec`` and summarize.

    With ``workers > 1`` runs execute in separate processes; results are
    identical to the sequential order because each run owns its RNG.
    """
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_indexed, [(spec, r) for r in range(spec.runs)]))
    else:
        results = [run_single(spec, r) for r in range(spec.runs)]
    return summarize(results, function=spec.function, algorithm=spec.algorithm)

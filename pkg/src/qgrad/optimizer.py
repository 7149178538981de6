"""q-gradient descent and the classical steepest-descent baseline.

One iteration of the q-gradient method draws the points ``q_i x_i`` from a
Gaussian centred on the iterate, forms the q-gradient from those secants and
takes a step of length ``alpha_k`` against it.  Both the Gaussian width and
the step length shrink geometrically by ``beta`` every iteration, moving the
search from a wide stochastic exploration to an almost deterministic local
descent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .qcalc import (
    DEFAULT_FD_STEP,
    EvalCountedFunction,
    classical_gradient_fd,
    is_degenerate,
    q_gradient,
)

__all__ = [
    "QGradientConfig",
    "OptimizerState",
    "RunResult",
    "sample_q",
    "cool",
    "initial_state",
    "descend_step",
    "optimize",
    "golden_section",
    "steepest_descent",
    "NORMALIZATIONS",
    "STATIONARY_TOL",
]

NORMALIZATIONS = ("max", "l2", "none")
STATIONARY_TOL = 1e-12
# tenfold bracket reductions the baseline tries before declaring no progress
SD_BRACKET_SHRINKS = 12


@dataclass(frozen=True)
class QGradientConfig:
    """Free parameters and stopping rules of one q-gradient run.

    ``normalize`` selects how the raw q-gradient is scaled into a step:

    * ``"max"`` (default) divides by the largest absolute component, so no
      coordinate moves farther than ``alpha_k`` in one iteration;
    * ``"l2"`` divides by the Euclidean norm, a step of length ``alpha_k``;
    * ``"none"`` uses the raw q-gradient, ``x - alpha_k * grad_q``.
    """

    sigma0: float
    alpha0: float
    beta: float
    dim: int
    max_evals: int = 10**6
    target: float = 1e-20
    fd_step: float = DEFAULT_FD_STEP
    max_redraws: int = 10
    sigma_floor: float = 0.0
    normalize: str = "max"

    def __post_init__(self):
        if not self.sigma0 > 0:
            raise ValueError(f"sigma0 must be positive, got {self.sigma0}")
        if not self.alpha0 > 0:
            raise ValueError(f"alpha0 must be positive, got {self.alpha0}")
        if not 0 < self.beta < 1:
            raise ValueError(f"beta must lie in (0, 1), got {self.beta}")
        if self.dim < 1:
            raise ValueError(f"dim must be positive, got {self.dim}")
        if self.max_evals < 1:
            raise ValueError(f"max_evals must be at least 1, got {self.max_evals}")
        if not self.fd_step > 0:
            raise ValueError(f"fd_step must be positive, got {self.fd_step}")
        if self.max_redraws < 1:
            raise ValueError(f"max_redraws must be at least 1, got {self.max_redraws}")
        if self.sigma_floor < 0:
            raise ValueError(f"sigma_floor must be non-negative, got {self.sigma_floor}")
        if self.normalize not in NORMALIZATIONS:
            raise ValueError(
                f"normalize must be one of {NORMALIZATIONS}, got {self.normalize!r}"
            )


@dataclass(frozen=True)
class OptimizerState:
    """Snapshot of a run between iterations.

    ``fx`` is the objective value at the iterate the latest step started
    from (``None`` before the first step).  The state is immutable and holds
    no references to the objective or RNG, so it can be pickled and resumed
    elsewhere.
    """

    x: np.ndarray
    sigma_k: float
    alpha_k: float
    iteration: int = 0
    best_f: float = math.inf
    best_x: Optional[np.ndarray] = None
    fx: Optional[float] = None
    null_steps: int = 0


@dataclass(frozen=True)
class RunResult:
    evals_used: int
    best_f: float
    best_x: tuple
    success: bool
    iterations: int
    seed: Optional[int] = None
    success_mode: Optional[str] = None


def sample_q(x, sigma: float, rng: np.random.Generator, max_redraws: int = 10) -> np.ndarray:
    """Draw the q parameters for one iteration.

    Each ``s_i ~ Normal(x_i, sigma)`` is the point the secant along
    coordinate ``i`` reaches, and ``q_i = s_i / x_i``.  Draws whose secant is
    degenerate are redrawn up to ``max_redraws`` times, after which the
    sentinel ``q_i = 1`` (classical partial derivative) is emitted.  Zero
    coordinates always get the sentinel, and so does every coordinate when
    ``sigma`` is 0, which is where a long geometric schedule underflows to.
    """
    x = np.asarray(x, dtype=float)
    if not sigma >= 0:
        raise ValueError(f"sigma must be non-negative, got {sigma}")
    q = np.ones_like(x)
    if sigma == 0:
        return q
    pending = x != 0
    for _ in range(max_redraws + 1):
        if pending.all():
            q = (x + sigma * rng.standard_normal(x.shape[0])) / x
        elif pending.any():
            idx = np.flatnonzero(pending)
            q[idx] = (x[idx] + sigma * rng.standard_normal(idx.size)) / x[idx]
        else:
            return q
        pending &= is_degenerate(x, q)
    q[pending] = 1.0
    return q


def cool(value: float, beta: float) -> float:
    """One step of the geometric schedule, ``beta * value``.

    Repeated cooling eventually underflows to 0, which is accepted.
    """
    if not value >= 0:
        raise ValueError(f"value must be non-negative, got {value}")
    if not 0 < beta < 1:
        raise ValueError(f"beta must lie in (0, 1), got {beta}")
    return beta * value


def initial_state(cfg: QGradientConfig, x0) -> OptimizerState:
    x0 = np.array(x0, dtype=float)
    if x0.shape != (cfg.dim,):
        raise ValueError(f"x0 must have shape ({cfg.dim},), got {x0.shape}")
    return OptimizerState(x=x0, sigma_k=cfg.sigma0, alpha_k=cfg.alpha0, best_x=x0.copy())


def _direction(g: np.ndarray, normalize: str) -> np.ndarray:
    if normalize == "max":
        return g / np.max(np.abs(g))
    if normalize == "l2":
        return g / np.linalg.norm(g)
    return g


def descend_step(
    state: OptimizerState,
    F: EvalCountedFunction,
    cfg: QGradientConfig,
    rng: np.random.Generator,
    budget: Optional[int] = None,
) -> OptimizerState:
    """Advance the iteration by one step.

    Evaluates ``F`` at the current iterate (one evaluation, shared by every
    q-gradient drawn in this step) and updates the best-so-far record.  If
    that already meets ``cfg.target`` the state is returned without moving.
    Otherwise q is sampled and the q-gradient formed (``n`` evaluations);
    a q-gradient with norm below ``STATIONARY_TOL`` is discarded and q
    redrawn, at most ``cfg.max_redraws`` times.  If none is usable the
    iterate stays put.  The schedules are cooled in every case.

    ``budget`` caps the number of evaluations this call may spend; a step
    that cannot afford a q-gradient becomes a null step.
    """
    x = state.x
    n = x.shape[0]
    if n != cfg.dim:
        raise ValueError(f"state dimension {n} does not match cfg.dim={cfg.dim}")
    if budget is None:
        budget = math.inf
    if budget < 1:
        return state

    fx = F(x)
    best_f, best_x = state.best_f, state.best_x
    if math.isfinite(fx) and fx < best_f:
        best_f, best_x = fx, x.copy()
    if best_f < cfg.target:
        return replace(state, best_f=best_f, best_x=best_x, fx=fx)
    budget -= 1

    step = None
    for _ in range(cfg.max_redraws + 1):
        if budget < n:
            break
        q = sample_q(x, state.sigma_k, rng, cfg.max_redraws)
        g = q_gradient(F, x, q, cfg.fd_step, fx=fx)
        budget -= n
        if np.all(np.isfinite(g)) and np.linalg.norm(g) >= STATIONARY_TOL:
            step = state.alpha_k * _direction(g, cfg.normalize)
            break

    if step is None:
        new_x, null_steps = x, state.null_steps + 1
    else:
        new_x, null_steps = x - step, state.null_steps

    return OptimizerState(
        x=new_x,
        sigma_k=max(cool(state.sigma_k, cfg.beta), cfg.sigma_floor),
        alpha_k=cool(state.alpha_k, cfg.beta),
        iteration=state.iteration + 1,
        best_f=best_f,
        best_x=best_x,
        fx=fx,
        null_steps=null_steps,
    )


def _classify(best_f, best_x, target, basin):
    if best_f < target:
        return True, "target"
    if basin is not None and best_x is not None and basin(np.asarray(best_x)):
        return True, "basin"
    return False, None


def optimize(
    F: EvalCountedFunction,
    cfg: QGradientConfig,
    x0,
    rng: np.random.Generator,
    basin: Optional[Callable[[np.ndarray], bool]] = None,
    seed: Optional[int] = None,
    callback: Optional[Callable[[OptimizerState], None]] = None,
) -> RunResult:
    """Run the q-gradient method from ``x0``.

    Iterates :func:`descend_step` until the best value found drops below
    ``cfg.target`` or ``cfg.max_evals`` evaluations have been spent.  The
    run succeeds if the target was reached or, when ``basin`` is given, the
    best point lies in the global basin.  ``callback`` sees every state.
    """
    state = initial_state(cfg, x0)
    start = F.count
    while True:
        used = F.count - start
        if state.best_f < cfg.target or used >= cfg.max_evals:
            break
        state = descend_step(state, F, cfg, rng, budget=cfg.max_evals - used)
        if callback is not None:
            callback(state)

    success, mode = _classify(state.best_f, state.best_x, cfg.target, basin)
    return RunResult(
        evals_used=F.count - start,
        best_f=float(state.best_f),
        best_x=tuple(float(v) for v in state.best_x),
        success=success,
        iterations=state.iteration,
        seed=seed,
        success_mode=mode,
    )


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section(
    phi: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_iters: int = 100,
) -> float:
    """Locate a minimizer of ``phi`` on ``[a, b]`` by golden-section search.

    Uses at most ``max_iters + 2`` evaluations of ``phi`` and returns the
    midpoint of the final bracket.  Raises ``ValueError`` if ``phi`` returns
    a non-finite value.
    """
    if not a < b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")

    def value(t):
        v = float(phi(t))
        if not math.isfinite(v):
            raise ValueError(f"non-finite line-search value {v} at t={t}")
        return v

    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = value(c), value(d)
    for _ in range(max_iters):
        if b - a <= 2 * tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = value(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = value(d)
    return 0.5 * (a + b)


def steepest_descent(
    F: EvalCountedFunction,
    x0,
    alpha_max: float = 10.0,
    line_tol: float = 1e-10,
    line_max_iters: int = 100,
    max_evals: int = 10**6,
    target: float = 1e-20,
    fd_step: float = DEFAULT_FD_STEP,
    basin: Optional[Callable[[np.ndarray], bool]] = None,
    seed: Optional[int] = None,
    callback: Optional[Callable[[np.ndarray, float], None]] = None,
) -> RunResult:
    """Classical steepest descent with a golden-section line search.

    The direction is the negative forward-difference gradient and the step
    is searched on ``[0, alpha_max]``.  If the line minimum found there does
    not lower ``F``, the bracket is shortened tenfold and searched again, up
    to ``SD_BRACKET_SHRINKS`` times.  A step is taken only if it lowers
    ``F``, so the iterate values decrease strictly; the run ends when the
    target is met, the budget cannot cover another line search, or no
    bracket gives a decrease.
    """
    x = np.array(x0, dtype=float)
    n = x.shape[0]
    start = F.count
    line_cost = line_max_iters + 3  # golden section plus the trial point
    fx = F(x)
    best_f, best_x = fx, x.copy()
    iterations = 0
    if callback is not None:
        callback(x, fx)

    def remaining():
        return max_evals - (F.count - start)

    while best_f >= target and remaining() >= n + line_cost:
        g = classical_gradient_fd(F, x, fd_step, fx=fx)
        if not np.all(np.isfinite(g)) or not np.any(g):
            break
        d = -g
        # golden section assumes a unimodal line function; when the point it
        # returns does not improve on x, search a tenfold shorter bracket
        upper = alpha_max
        x_new = None
        for _ in range(SD_BRACKET_SHRINKS + 1):
            if remaining() < line_cost:
                break
            t = golden_section(lambda s: F(x + s * d), 0.0, upper, line_tol, line_max_iters)
            trial = x + t * d
            f_trial = F(trial)
            if f_trial < fx:
                x_new, f_new = trial, f_trial
                break
            upper /= 10.0
        if x_new is None:
            break
        x, fx = x_new, f_new
        iterations += 1
        if fx < best_f:
            best_f, best_x = fx, x.copy()
        if callback is not None:
            callback(x, fx)

    success, mode = _classify(best_f, best_x, target, basin)
    return RunResult(
        evals_used=F.count - start,
        best_f=float(best_f),
        best_x=tuple(float(v) for v in best_x),
        success=success,
        iterations=iterations,
        seed=seed,
        success_mode=mode,
    )

"""Jackson q-derivative primitives.

The q-derivative of ``f`` at ``x`` is the slope of the secant through
``(x, f(x))`` and ``(q x, f(q x))``.  For several variables each coordinate
gets its own ``q_i`` and the q-gradient stacks the partial q-derivatives.
Where the secant collapses (``x_i == 0`` or ``q_i == 1``) the classical
partial derivative is used instead, estimated by a forward difference that
reuses the shared evaluation ``F(x)``.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

__all__ = [
    "EvalCountedFunction",
    "q_number",
    "q_derivative_1d",
    "q_partial",
    "q_gradient",
    "classical_gradient_fd",
    "is_degenerate",
    "DEFAULT_FD_STEP",
    "DEGENERACY_RTOL",
]

DEFAULT_FD_STEP = 1e-8
# Secants shorter than this fraction of |x_i| fall back to the classical limit.
DEGENERACY_RTOL = 1e-15


class EvalCountedFunction:
    """Wrap an objective and count every point it is evaluated at.

    Parameters
    ----------
    objective : callable
        Maps a point of shape ``(n,)`` to a real.  If ``vectorized`` is true
        it must also map a stack of shape ``(m, n)`` to shape ``(m,)``.
    vectorized : bool, optional
        Evaluate point stacks in one call.  The count is the same either way.

    Notes
    -----
    The counter is mutable state; do not share one instance between
    concurrent runs.
    """

    def __init__(self, objective: Callable, vectorized: bool = False):
        self.objective = objective
        self.vectorized = vectorized
        self.count = 0

    def __call__(self, x) -> float:
        self.count += 1
        return float(self.objective(np.asarray(x, dtype=float)))

    def evaluate_many(self, points) -> np.ndarray:
        """Evaluate each row of ``points``; the counter grows by the row count."""
        points = np.asarray(points, dtype=float)
        if points.ndim != 2:
            raise ValueError(f"expected a 2-d stack of points, got shape {points.shape}")
        self.count += points.shape[0]
        if self.vectorized:
            return np.asarray(self.objective(points), dtype=float).reshape(points.shape[0])
        return np.array([float(self.objective(p)) for p in points])

    def reset(self):
        self.count = 0

    def __repr__(self):
        return f"EvalCountedFunction({self.objective!r}, count={self.count})"


def q_number(n: int, q: float) -> float:
    """q-analogue of the integer ``n``: ``(q**n - 1) / (q - 1)``."""
    if q == 1:
        raise ValueError("q_number is undefined at q = 1 (the limit value is n)")
    return (q**n - 1.0) / (q - 1.0)


def q_derivative_1d(f: Callable[[float], float], x: float, q: float) -> float:
    """Jackson derivative ``(f(q x) - f(x)) / (q x - x)``.

    Costs exactly two evaluations of ``f``.  Raises ``ValueError`` at the
    degenerate points ``x == 0`` and ``q == 1``.
    """
    if x == 0:
        raise ValueError("q-derivative requires x != 0")
    if q == 1:
        raise ValueError("q-derivative requires q != 1")
    qx = q * x
    return (f(qx) - f(x)) / (qx - x)


def is_degenerate(x_i, q_i):
    """True where the secant ``x_i -> q_i x_i`` is too short to use.

    Works elementwise on arrays.  Degenerate means ``x_i == 0``, ``q_i == 1``
    or ``|q_i x_i - x_i| <= DEGENERACY_RTOL * |x_i|``.
    """
    x_i = np.asarray(x_i, dtype=float)
    # x_i == 0 and q_i == 1 both give shift == 0 and are caught by "<="
    shift = np.abs(q_i * x_i - x_i)
    return shift <= DEGENERACY_RTOL * np.abs(x_i)


def _check_point(x, n=None):
    x = np.array(x, dtype=float)
    if x.ndim != 1:
        raise ValueError(f"expected a 1-d point, got shape {x.shape}")
    if n is not None and x.shape[0] != n:
        raise ValueError(f"dimension mismatch: {x.shape[0]} != {n}")
    return x


def _probe_points(x, q, h):
    """Rows of ``x`` with coordinate ``i`` moved to ``q_i x_i`` (or ``x_i + h``)."""
    n = x.shape[0]
    target = q * x
    degenerate = np.abs(target - x) <= DEGENERACY_RTOL * np.abs(x)
    if degenerate.any():
        target[degenerate] = x[degenerate] + h
    points = x[None, :].repeat(n, axis=0)
    points.flat[:: n + 1] = target
    return points, target - x


def q_partial(F: EvalCountedFunction, x, i: int, q_i: float, h: float = DEFAULT_FD_STEP) -> float:
    """Partial q-derivative of ``F`` along coordinate ``i`` (0-based).

    Falls back to the forward difference ``(F(x + h e_i) - F(x)) / h`` where
    the secant is degenerate.  Costs two evaluations.
    """
    x = _check_point(x)
    if not 0 <= i < x.shape[0]:
        raise IndexError(f"coordinate {i} out of range for dimension {x.shape[0]}")
    moved = x.copy()
    if is_degenerate(x[i], q_i):
        moved[i] = x[i] + h
    else:
        moved[i] = q_i * x[i]
    step = moved[i] - x[i]
    return (F(moved) - F(x)) / step


def q_gradient(F: EvalCountedFunction, x, q, h: float = DEFAULT_FD_STEP, fx: float | None = None) -> np.ndarray:
    """q-gradient of ``F`` at ``x`` for the parameter vector ``q``.

    Parameters
    ----------
    F : EvalCountedFunction
    x : array_like, shape (n,)
    q : array_like, shape (n,)
        One parameter per coordinate.  Entries equal to 1 request the
        classical partial derivative.
    h : float
        Forward-difference step for degenerate coordinates.
    fx : float, optional
        Already known value ``F(x)``.  When given it is reused and the call
        costs ``n`` evaluations instead of ``n + 1``.

    Returns
    -------
    ndarray, shape (n,)
    """
    x = _check_point(x)
    q = _check_point(q, x.shape[0])
    points, steps = _probe_points(x, q, h)
    if fx is None:
        values = F.evaluate_many(np.vstack([x, points]))
        fx, shifted = values[0], values[1:]
    else:
        shifted = F.evaluate_many(points)
    return (shifted - fx) / steps


def classical_gradient_fd(F: EvalCountedFunction, x, h: float = DEFAULT_FD_STEP, fx: float | None = None) -> np.ndarray:
    """Forward finite-difference gradient, ``n + 1`` evaluations (``n`` if ``fx`` is given)."""
    if h <= 0:
        raise ValueError(f"step must be positive, got {h}")
    x = _check_point(x)
    n = x.shape[0]
    points = x[None, :].repeat(n, axis=0)
    points.flat[:: n + 1] += h
    steps = points.flat[:: n + 1] - x
    if fx is None:
        values = F.evaluate_many(np.vstack([x, points]))
        fx, shifted = values[0], values[1:]
    else:
        shifted = F.evaluate_many(points)
    return (shifted - fx) / steps

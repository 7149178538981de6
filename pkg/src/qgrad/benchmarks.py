"""Benchmark objectives used in the 20-variable test campaign.

Every function accepts an array whose last axis holds the coordinates, so a
stack of points of shape ``(m, n)`` is evaluated in one call and returns an
array of shape ``(m,)``.  A single point returns a 0-d result.

Registry names: ``elp``, ``sch``, ``ros``, ``ackl``, ``rtg``, ``rrtg``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "ObjectiveFunction",
    "RotationMatrix",
    "ellipsoidal",
    "schwefel",
    "rosenbrock",
    "ackley",
    "rastrigin",
    "rotated_rastrigin",
    "escape_function",
    "initial_point",
    "in_global_basin",
    "get_function",
    "FUNCTION_NAMES",
    "INIT_LOW",
    "INIT_HIGH",
]

INIT_LOW = -10.0
INIT_HIGH = -5.0

# Box half-width around the global minimizer for the multimodal basins.
BASIN_RADIUS = 0.5
# Accuracy that counts as "in the basin" for the convex functions.
UNIMODAL_BASIN_TOL = 1e-8


def ellipsoidal(x):
    """sum_i i * x_i**2"""
    x = np.asarray(x, dtype=float)
    weights = np.arange(1, x.shape[-1] + 1)
    return np.sum(weights * x**2, axis=-1)


def schwefel(x):
    """sum_i (x_1 + ... + x_i)**2"""
    x = np.asarray(x, dtype=float)
    return np.sum(np.cumsum(x, axis=-1) ** 2, axis=-1)


def rosenbrock(x):
    """Generalized Rosenbrock function, minimum 0 at x = (1, ..., 1)."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] < 2:
        raise ValueError("rosenbrock needs at least 2 variables")
    head, tail = x[..., :-1], x[..., 1:]
    return np.sum(100.0 * (head**2 - tail) ** 2 + (1.0 - head) ** 2, axis=-1)


_ACKLEY_OFFSET = (20.0 + np.e) - 20.0 - np.e


def ackley(x):
    """Ackley function.

    Computed as ``(20 + e) - 20 - e - 20*expm1(a) - e*expm1(b - 1)`` with
    ``a = -0.2*rms(x)`` and ``b = mean(cos(2*pi*x))``.  This is the textbook
    expression ``20 + e - 20*exp(a) - exp(b)`` regrouped so that the value
    near the origin keeps full relative precision.  The plain evaluation
    order rounds to multiples of ulp(20) ~ 3.55e-15 there, which leaves flat
    plateaus that no secant can see across.  The origin still evaluates to
    the double-precision offset of ``(20 + e) - 20 - e``, -4.44e-16.
    """
    x = np.asarray(x, dtype=float)
    n = x.shape[-1]
    rms = np.sqrt(np.sum(x**2, axis=-1) / n)
    mean_cos = np.sum(np.cos(2.0 * np.pi * x), axis=-1) / n
    return _ACKLEY_OFFSET - 20.0 * np.expm1(-0.2 * rms) - np.e * np.expm1(mean_cos - 1.0)


def rastrigin(x):
    """10 n + sum_i (x_i**2 - 10 cos(2 pi x_i))"""
    x = np.asarray(x, dtype=float)
    n = x.shape[-1]
    return 10.0 * n + np.sum(x**2 - 10.0 * np.cos(2.0 * np.pi * x), axis=-1)


class RotationMatrix:
    """Sparse block rotation with 4/5 on the diagonal and +-3/5 beside it.

    With 1-based indices: ``A[i, i] = 4/5``, ``A[i, i+1] = 3/5`` for odd
    ``i`` and ``A[i, i-1] = -3/5`` for even ``i``.  Each (odd, even) row pair
    is a 2x2 rotation block.  For odd ``n`` the last row has no partner
    column and keeps only its diagonal entry.
    """

    DIAG = 4.0 / 5.0
    OFF = 3.0 / 5.0

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"dimension must be positive, got {n}")
        self.n = n
        # partner[r] is the 0-based column of the off-diagonal entry of row r
        rows = np.arange(n)
        partner = np.where(rows % 2 == 0, rows + 1, rows - 1)
        coeff = np.where(rows % 2 == 0, self.OFF, -self.OFF)
        has_partner = partner < n
        self._partner = np.where(has_partner, partner, rows)
        self._coeff = np.where(has_partner, coeff, 0.0)
        self._partner.setflags(write=False)
        self._coeff.setflags(write=False)

    def apply(self, x):
        """Return ``A @ x`` along the last axis."""
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.n:
            raise ValueError(f"expected last axis of size {self.n}, got {x.shape[-1]}")
        return self.DIAG * x + self._coeff * x[..., self._partner]

    __call__ = apply

    def to_dense(self) -> np.ndarray:
        dense = self.DIAG * np.eye(self.n)
        rows = np.arange(self.n)
        dense[rows, self._partner] += self._coeff
        return dense

    def __repr__(self):
        return f"RotationMatrix(n={self.n})"


def rotated_rastrigin(x, rotation: RotationMatrix | None = None):
    """Rastrigin evaluated at ``y = A x``."""
    x = np.asarray(x, dtype=float)
    if rotation is None:
        rotation = RotationMatrix(x.shape[-1])
    return rastrigin(rotation.apply(x))


def escape_function(x):
    """One-variable double well ``2 - (exp(-x^2) + 2 exp(-(x-3)^2))``.

    Local minimum near 0, global minimum near 3.  Used to show how the
    q-derivative lets a descent iteration leave the shallow well.  Accepts a
    scalar or an array whose last axis has length 1.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim > 0:
        if x.shape[-1] != 1:
            raise ValueError(f"escape_function takes one variable, got {x.shape[-1]}")
        x = x[..., 0]
    return 2.0 - (np.exp(-(x**2)) + 2.0 * np.exp(-((x - 3.0) ** 2)))


@dataclass(frozen=True)
class ObjectiveFunction:
    """A named benchmark with its known minimum and basin predicate.

    ``eval`` is vectorized over the last axis.  Calling the object on a
    single point returns a Python float.
    """

    name: str
    dim: int
    eval: Callable[[np.ndarray], np.ndarray]
    x_star: np.ndarray
    f_star: float
    basin: Callable[[np.ndarray], bool] = field(repr=False)

    def __call__(self, x) -> float:
        return float(self.eval(x))


def _box_basin(center, transform=None):
    def basin(x):
        x = np.asarray(x, dtype=float)
        y = transform(x) if transform is not None else x
        return bool(np.max(np.abs(y - center)) < BASIN_RADIUS)

    return basin


def _accuracy_basin(func):
    def basin(x):
        return bool(func(x) < UNIMODAL_BASIN_TOL)

    return basin


def get_function(name: str, dim: int = 20) -> ObjectiveFunction:
    """Build the registered benchmark ``name`` in ``dim`` variables."""
    if name not in _BUILDERS:
        raise KeyError(
            f"unknown function {name!r}; valid names: {', '.join(FUNCTION_NAMES)}"
        )
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    return _BUILDERS[name](dim)


def _make_elp(n):
    return ObjectiveFunction("elp", n, ellipsoidal, np.zeros(n), 0.0, _accuracy_basin(ellipsoidal))


def _make_sch(n):
    return ObjectiveFunction("sch", n, schwefel, np.zeros(n), 0.0, _accuracy_basin(schwefel))


def _make_ros(n):
    if n < 2:
        raise ValueError("rosenbrock needs at least 2 variables")
    return ObjectiveFunction("ros", n, rosenbrock, np.ones(n), 0.0, _box_basin(1.0))


def _make_ackl(n):
    return ObjectiveFunction("ackl", n, ackley, np.zeros(n), 0.0, _box_basin(0.0))


def _make_rtg(n):
    return ObjectiveFunction("rtg", n, rastrigin, np.zeros(n), 0.0, _box_basin(0.0))


def _make_rrtg(n):
    rotation = RotationMatrix(n)

    def func(x):
        return rastrigin(rotation.apply(x))

    return ObjectiveFunction(
        "rrtg", n, func, np.zeros(n), 0.0, _box_basin(0.0, rotation.apply)
    )


_BUILDERS = {
    "elp": _make_elp,
    "sch": _make_sch,
    "ros": _make_ros,
    "ackl": _make_ackl,
    "rtg": _make_rtg,
    "rrtg": _make_rrtg,
}
FUNCTION_NAMES = tuple(_BUILDERS)


def initial_point(n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw a starting point uniformly from ``[-10, -5]^n``."""
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    return rng.uniform(INIT_LOW, INIT_HIGH, size=n)


def in_global_basin(f: ObjectiveFunction, x) -> bool:
    """Whether ``x`` lies in the global-minimum basin of ``f``.

    Ellipsoidal and Schwefel are convex, so membership means
    ``f(x) < 1e-8``.  Rosenbrock uses the box ``|x - 1|_inf < 0.5``; the
    Rastrigin family and Ackley use ``|x|_inf < 0.5`` (after rotation for
    ``rrtg``), the cell of the cosine lattice that contains the origin.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (f.dim,):
        raise ValueError(f"expected a point of dimension {f.dim}, got shape {x.shape}")
    return f.basin(x)

"""Hamiltonian structure of the planar replicator system.

On the open unit square with area form ``dx^dy / phi``, where
``phi(x, y) = x y (1-x) (1-y)``, the replicator flow is generated by

    H(x, y) = c ln x + d ln(1-x) + a ln y + b ln(1-y)

with Hamiltonian vector field ``(phi dH/dy, -phi dH/dx)``. ``H`` is strictly
concave with a single maximum at the interior equilibrium and tends to
``-inf`` at the boundary, so its level sets are closed curves around that
point.

In logit coordinates ``u = ln(x/(1-x))``, ``v = ln(y/(1-y))`` the area form
becomes ``du^dv`` and ``H`` separates as ``F(u) + G(v)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq

from .errors import LevelAboveMaximumError, NonBracketingError
from .state import ReducedConstants, State, check_state

__all__ = [
    "HamiltonianSystem",
    "LevelCurve",
    "hamiltonian",
    "energy",
    "hamiltonian_logit",
    "phi",
    "grad_H",
    "hessian_H",
    "hamiltonian_vector_field",
    "critical_point",
    "hessian_at_critical",
    "linearized_frequency",
    "linearized_period",
    "level_curve",
    "portrait_levels",
    "to_logit",
    "from_logit",
    "winding_number",
]

CONTOUR_TOL = 1e-10


@dataclass(frozen=True)
class HamiltonianSystem:
    """The Hamiltonian system defined by positive constants ``k`` on the open square."""

    k: ReducedConstants

    def __post_init__(self):
        if not isinstance(self.k, ReducedConstants):
            object.__setattr__(self, "k", ReducedConstants(*self.k))


def _k(sys):
    if isinstance(sys, HamiltonianSystem):
        return sys.k
    if isinstance(sys, ReducedConstants):
        return sys
    return ReducedConstants(*sys)


def _exact(*values):
    return all(isinstance(v, (int, Fraction)) for v in values)


def hamiltonian(sys, s) -> float:
    """Value of ``H`` at an interior state. ``ln(1-x)`` goes through ``log1p``."""
    a, b, c, d = _k(sys)
    x, y = check_state(s)
    x, y = float(x), float(y)
    return (
        c * math.log(x) + d * math.log1p(-x) + a * math.log(y) + b * math.log1p(-y)
    )


def energy(k, x, y):
    """Vectorised ``H`` over arrays of coordinates; keeps the input dtype."""
    a, b, c, d = _k(k).as_floats()
    x = np.asarray(x)
    y = np.asarray(y)
    return c * np.log(x) + d * np.log1p(-x) + a * np.log(y) + b * np.log1p(-y)


def hamiltonian_logit(sys, u, v):
    """``H`` in logit coordinates, ``F(u) + G(v)``.

    ``F(u) = -c ln(1+e^-u) - d ln(1+e^u)`` and likewise ``G`` with ``a, b``.
    Accurate arbitrarily close to the boundary of the square.
    """
    a, b, c, d = _k(sys).as_floats()
    u = np.asarray(u)
    v = np.asarray(v)
    zero = np.zeros((), dtype=np.result_type(u, v, float))
    f = -c * np.logaddexp(zero, -u) - d * np.logaddexp(zero, u)
    g = -a * np.logaddexp(zero, -v) - b * np.logaddexp(zero, v)
    out = f + g
    return out[()] if out.ndim == 0 else out


def to_logit(s):
    x, y = check_state(s)
    x, y = float(x), float(y)
    return math.log(x) - math.log1p(-x), math.log(y) - math.log1p(-y)


def _expit(u):
    if u >= 0:
        return 1.0 / (1.0 + math.exp(-u))
    e = math.exp(u)
    return e / (1.0 + e)


def from_logit(u, v) -> State:
    return State(_expit(u), _expit(v))


def phi(s):
    """``x y (1-x) (1-y)``, positive on the open square with maximum 1/16."""
    x, y = check_state(s)
    return x * y * (1 - x) * (1 - y)


def grad_H(sys, s):
    """``(dH/dx, dH/dy) = (c/x - d/(1-x), a/y - b/(1-y))``."""
    a, b, c, d = _k(sys)
    x, y = check_state(s)
    return (c / x - d / (1 - x), a / y - b / (1 - y))


def hessian_H(sys, s) -> np.ndarray:
    """Hessian of ``H`` at any interior state; diagonal and negative definite."""
    a, b, c, d = _k(sys)
    x, y = check_state(s)
    hxx = -c / x**2 - d / (1 - x) ** 2
    hyy = -a / y**2 - b / (1 - y) ** 2
    return _diag(hxx, hyy)


def _diag(hxx, hyy):
    if _exact(hxx, hyy):
        return np.array([[hxx, 0], [0, hyy]], dtype=object)
    return np.array([[hxx, 0.0], [0.0, hyy]], dtype=float)


def hamiltonian_vector_field(sys, s):
    """``X_H = (phi dH/dy, -phi dH/dx)``; coincides with the replicator field."""
    p = phi(s)
    hx, hy = grad_H(sys, s)
    return (p * hy, -p * hx)


def critical_point(sys) -> State:
    """The unique critical point ``(c/(c+d), a/(a+b))``, exact for exact constants."""
    a, b, c, d = _k(sys)
    if _exact(a, b, c, d):
        return State(Fraction(c, 1) / (c + d), Fraction(a, 1) / (a + b))
    return State(c / (c + d), a / (a + b))


def hessian_at_critical(sys) -> np.ndarray:
    """``diag(-(c+d)^3/(cd), -(a+b)^3/(ab))``, the Hessian at the maximum.

    Object dtype holding Fractions for exact constants, float64 otherwise.
    """
    a, b, c, d = _k(sys)
    if _exact(a, b, c, d):
        a, b, c, d = (Fraction(v) for v in (a, b, c, d))
    return _diag(-((c + d) ** 3) / (c * d), -((a + b) ** 3) / (a * b))


def linearized_frequency(sys) -> float:
    """Angular frequency of small oscillations about the equilibrium.

    Equals ``phi(x0, y0) * sqrt(Hxx Hyy) = sqrt(abcd / ((a+b)(c+d)))``.
    """
    a, b, c, d = _k(sys).as_floats()
    return math.sqrt(a * b * c * d / ((a + b) * (c + d)))


def linearized_period(sys) -> float:
    return 2.0 * math.pi / linearized_frequency(sys)


@dataclass(frozen=True)
class LevelCurve:
    """A closed polyline on ``{H = level}``; the last vertex repeats the first."""

    level: float
    x: np.ndarray
    y: np.ndarray

    def __len__(self):
        return len(self.x)

    @property
    def points(self):
        return np.column_stack([self.x, self.y])

    @property
    def is_degenerate(self):
        return len(self.x) <= 2

    def residual(self, sys) -> float:
        """Largest ``|H(vertex) - level|`` over the vertices."""
        return float(np.max(np.abs(energy(sys, self.x, self.y) - self.level)))


def winding_number(xs, ys, center) -> int:
    """Winding number of the closed polyline ``(xs, ys)`` around ``center``."""
    cx, cy = center
    ang = np.arctan2(np.asarray(ys, dtype=float) - float(cy), np.asarray(xs, dtype=float) - float(cx))
    dtheta = np.diff(ang)
    dtheta = (dtheta + np.pi) % (2 * np.pi) - np.pi
    return int(round(dtheta.sum() / (2 * np.pi)))


def _ray_exit(x0, y0, cos_t, sin_t):
    """Distance from ``(x0, y0)`` to the boundary of the unit square along a direction."""
    dists = []
    if cos_t > 0:
        dists.append((1 - x0) / cos_t)
    elif cos_t < 0:
        dists.append(-x0 / cos_t)
    if sin_t > 0:
        dists.append((1 - y0) / sin_t)
    elif sin_t < 0:
        dists.append(-y0 / sin_t)
    return min(dists)


def level_curve(sys, level: float, resolution: int = 256, tol: float = CONTOUR_TOL) -> LevelCurve:
    """Trace ``{H = level}`` by marching rays out of the critical point.

    For each of ``resolution`` equally spaced directions the radius where
    ``H`` drops to ``level`` is found by bracketed root finding. ``H`` is
    strictly concave, so it decreases monotonically along every ray from the
    maximum and each ray crosses the level once; a coarse monotonicity check
    still guards each ray.

    Raises
    ------
    LevelAboveMaximumError
        ``level`` exceeds the maximum of ``H``.
    NonBracketingError
        A ray reaches the boundary without crossing ``level``, its profile is
        not monotone, or a vertex misses the level by more than ``tol``.
    """
    if resolution < 16:
        raise ValueError("resolution must be at least 16")
    k = _k(sys)
    cp = critical_point(k)
    x0, y0 = float(cp.x), float(cp.y)
    h_max = hamiltonian(k, (x0, y0))
    level = float(level)
    if level > h_max:
        raise LevelAboveMaximumError(f"level {level!r} is above the maximum H = {h_max!r}")
    if level == h_max:
        return LevelCurve(level, np.array([x0, x0]), np.array([y0, y0]))

    def h_on_ray(r, cos_t, sin_t):
        return hamiltonian(k, (x0 + r * cos_t, y0 + r * sin_t)) - level

    probes = np.linspace(0.0, 1.0, 17)[1:-1]
    xs = np.empty(resolution + 1)
    ys = np.empty(resolution + 1)
    for i in range(resolution):
        theta = 2.0 * math.pi * i / resolution
        cos_t, sin_t = math.cos(theta), math.sin(theta)
        r_hi = _ray_exit(x0, y0, cos_t, sin_t) * (1.0 - 1e-12)
        f_hi = h_on_ray(r_hi, cos_t, sin_t)
        if f_hi >= 0:
            raise NonBracketingError(f"ray at angle {theta!r} reaches the boundary above level {level!r}")
        profile = [h_on_ray(r_hi * p, cos_t, sin_t) for p in probes]
        if any(later >= earlier for earlier, later in zip(profile, profile[1:])):
            raise NonBracketingError(f"H is not monotone along the ray at angle {theta!r}")
        r = brentq(h_on_ray, 0.0, r_hi, args=(cos_t, sin_t), xtol=1e-15, rtol=4 * np.finfo(float).eps)
        xs[i] = x0 + r * cos_t
        ys[i] = y0 + r * sin_t
    xs[-1], ys[-1] = xs[0], ys[0]
    curve = LevelCurve(level, xs, ys)
    res = curve.residual(k)
    if res > tol:
        raise NonBracketingError(f"contour residual {res!r} exceeds tolerance {tol!r}")
    return curve


def portrait_levels(sys, n: int = 8, top: float = 0.25, bottom: float = 6.0) -> np.ndarray:
    """``n`` levels equally spaced from ``H_max - top`` down to ``H_max - bottom``."""
    if n < 1:
        raise ValueError("n must be positive")
    h_max = hamiltonian(sys, critical_point(sys))
    if n == 1:
        return np.array([h_max - top])
    return np.linspace(h_max - top, h_max - bottom, n)

"""Replicator dynamics of the scientists-vs-publishers game.

The two-population replicator equations reduce, on ``x = x1`` and ``y = y1``,
to the planar system

    dx/dt = x (1-x) (a - (a+b) y)
    dy/dt = y (1-y) (-c + (c+d) x)

Two publisher conventions are supported. ``"derived"`` uses the publisher
payoff vector ``B x`` with ``B`` rows indexed by publisher strategies, so
that ``c = b22-b12`` and ``d = b11-b21`` and the fixed point is the mixed
Nash equilibrium of the game. ``"paper"`` uses the transposed product
``B^T x``, giving ``c = b22-b21`` and ``d = b11-b12``. The two agree
whenever ``b12 == b21``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, NonConvergenceError, NonPositiveConstantsError, StepFailureError
from .symplectic import critical_point, energy, hamiltonian_logit, linearized_period, to_logit
from .payoff import BimatrixGame
from .state import ReducedConstants, State, check_state

__all__ = [
    "ReducedConstants",
    "State",
    "Trajectory",
    "CONVENTIONS",
    "METHODS",
    "reduced_constants",
    "reduced_field",
    "full_replicator_field",
    "integrate",
    "estimate_period",
    "read_trajectory_csv",
]

Convention = Literal["paper", "derived"]
Method = Literal["rk4", "leapfrog_logit"]
CONVENTIONS = ("derived", "paper")
METHODS = ("rk4", "leapfrog_logit")

DEFAULT_DT = 1e-3


def _check_convention(convention):
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}, got {convention!r}")


def reduced_constants(game: BimatrixGame, convention: Convention = "derived") -> ReducedConstants:
    """Extract ``(a, b, c, d)`` from a game.

    Raises
    ------
    NonPositiveConstantsError
        Naming each payoff difference that is not positive.
    """
    _check_convention(convention)
    (a11, a12), (a21, a22) = game.A
    (b11, b12), (b21, b22) = game.B
    diffs = {"a12-a22": a12 - a22, "a21-a11": a21 - a11}
    if convention == "paper":
        diffs.update({"b22-b21": b22 - b21, "b11-b12": b11 - b12})
    else:
        diffs.update({"b22-b12": b22 - b12, "b11-b21": b11 - b21})
    bad = [f"{name} = {v}" for name, v in diffs.items() if not v > 0]
    if bad:
        raise NonPositiveConstantsError(
            f"non-positive payoff difference(s) under the {convention} convention: {', '.join(bad)}"
        )
    return ReducedConstants(*diffs.values())


def reduced_field(k: ReducedConstants, s):
    """Velocity ``(dx/dt, dy/dt)`` of the planar system at an interior state."""
    a, b, c, d = k
    x, y = check_state(s)
    return (x * (1 - x) * (a - (a + b) * y), y * (1 - y) * (-c + (c + d) * x))


def full_replicator_field(game: BimatrixGame, xvec, yvec, convention: Convention = "derived"):
    """Four-dimensional replicator velocities ``(dx1, dx2, dy1, dy2)``.

    ``dx_i = x_i ((A y)_i - x.A y)`` for the scientists; the publisher
    payoff vector is ``B x`` under ``"derived"`` and ``B^T x`` under
    ``"paper"``. Velocities within each population sum to zero.
    """
    _check_convention(convention)
    A, B = game.A, game.B
    x1, x2 = xvec
    y1, y2 = yvec
    ay = (A[0][0] * y1 + A[0][1] * y2, A[1][0] * y1 + A[1][1] * y2)
    if convention == "derived":
        bx = (B[0][0] * x1 + B[0][1] * x2, B[1][0] * x1 + B[1][1] * x2)
    else:
        bx = (B[0][0] * x1 + B[1][0] * x2, B[0][1] * x1 + B[1][1] * x2)
    avg_x = x1 * ay[0] + x2 * ay[1]
    avg_y = y1 * bx[0] + y2 * bx[1]
    return (
        x1 * (ay[0] - avg_x),
        x2 * (ay[1] - avg_x),
        y1 * (bx[0] - avg_y),
        y2 * (bx[1] - avg_y),
    )


@dataclass(frozen=True)
class Trajectory:
    """Time-stamped samples of the planar system with the Hamiltonian at each sample."""

    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    H: np.ndarray
    method: str
    dt: float

    def __len__(self):
        return len(self.t)

    @property
    def samples(self):
        return list(zip(self.t, (State(x, y) for x, y in zip(self.x, self.y)), self.H))

    @property
    def final_state(self) -> State:
        return State(self.x[-1], self.y[-1])

    def h_drift(self) -> float:
        """``max(H) - min(H)`` over the samples."""
        return float(np.max(self.H) - np.min(self.H))

    def max_h_deviation(self) -> float:
        """``max |H(t) - H(0)|``."""
        return float(np.max(np.abs(self.H - self.H[0])))

    def to_csv(self, path_or_file):
        """Write ``t,x,y,H`` rows with 17 significant digits."""
        if hasattr(path_or_file, "write"):
            _write_rows(path_or_file, self)
        else:
            with open(path_or_file, "w", newline="") as fh:
                _write_rows(fh, self)


def _write_rows(fh, traj):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["t", "x", "y", "H"])
    for row in zip(traj.t, traj.x, traj.y, traj.H):
        writer.writerow([f"{float(v):.17g}" for v in row])


def read_trajectory_csv(path, method: str = "unknown") -> Trajectory:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != ["t", "x", "y", "H"]:
            raise ValueError(f"unexpected trajectory header {header!r}")
        rows = np.array([[float(v) for v in row] for row in reader], dtype=float)
    dt = float(rows[1, 0] - rows[0, 0]) if len(rows) > 1 else 0.0
    return Trajectory(rows[:, 0], rows[:, 1], rows[:, 2], rows[:, 3], method, dt)


def _sample_times(t_end, dt):
    """Sample times: multiples of ``dt`` up to ``t_end``, plus ``t_end`` itself if it is not one."""
    n = int(math.floor(t_end / dt * (1 + 1e-12)))
    t = np.arange(n + 1) * dt
    if t_end - n * dt > 1e-9 * dt:
        t = np.append(t, t_end)
    return t


def _rk4_step(k, x, y, h):
    a, b, c, d = k
    ab, cd = a + b, c + d

    def f(x, y):
        return x * (1 - x) * (a - ab * y), y * (1 - y) * (cd * x - c)

    k1x, k1y = f(x, y)
    k2x, k2y = f(x + h / 2 * k1x, y + h / 2 * k1y)
    k3x, k3y = f(x + h / 2 * k2x, y + h / 2 * k2y)
    k4x, k4y = f(x + h * k3x, y + h * k3y)
    return (
        x + h / 6 * (k1x + 2 * k2x + 2 * k3x + k4x),
        y + h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y),
    )


def _check_interior(x, y, t):
    if not (0 < x < 1 and 0 < y < 1):
        raise StepFailureError(
            f"integration left the open unit square at t={float(t)!r}: ({float(x)!r}, {float(y)!r}); "
            "try a smaller dt"
        )


def _is_double(dtype):
    return dtype is float or np.dtype(dtype) == np.float64


def _scalar(dtype):
    # Plain Python floats are much faster than numpy scalars in these loops.
    return float if _is_double(dtype) else dtype


def _integrate_rk4(k, s0, steps, dtype):
    conv = _scalar(dtype)
    x, y = conv(s0.x), conv(s0.y)
    kc = tuple(conv(v) for v in k.as_floats())
    xs = np.empty(len(steps) + 1, dtype=dtype)
    ys = np.empty(len(steps) + 1, dtype=dtype)
    xs[0], ys[0] = x, y
    t = 0.0
    for i, h in enumerate(steps, 1):
        x, y = _rk4_step(kc, x, y, conv(h))
        t += h
        _check_interior(x, y, t)
        xs[i], ys[i] = x, y
    return xs, ys, energy(k, xs, ys)


def _sigmoid_fn(dtype):
    if _is_double(dtype):
        def sig(u):
            if u >= 0:
                return 1.0 / (1.0 + math.exp(-u))
            e = math.exp(u)
            return e / (1.0 + e)
        return sig

    one = dtype(1)

    def sig_ext(u):
        if u >= 0:
            return one / (one + np.exp(-u))
        e = np.exp(u)
        return e / (one + e)
    return sig_ext


def _integrate_leapfrog(k, s0, steps, dtype):
    """Stormer-Verlet in logit coordinates.

    With ``u' = a - (a+b) sigmoid(v)`` and ``v' = (c+d) sigmoid(u) - c`` the
    system is a canonical separable Hamiltonian system in ``(u, v)``, so the
    half-kick / drift / half-kick splitting is symplectic.
    """
    conv = _scalar(dtype)
    a, b, c, d = (conv(v) for v in k.as_floats())
    ab, cd = a + b, c + d
    sig = _sigmoid_fn(dtype)
    u0, v0 = to_logit(s0)
    u, v = conv(u0), conv(v0)
    us = np.empty(len(steps) + 1, dtype=dtype)
    vs = np.empty(len(steps) + 1, dtype=dtype)
    us[0], vs[0] = u, v
    for i, h in enumerate(steps, 1):
        h = conv(h)
        u = u + h / 2 * (a - ab * sig(v))
        v = v + h * (cd * sig(u) - c)
        u = u + h / 2 * (a - ab * sig(v))
        us[i], vs[i] = u, v
    if not (np.all(np.isfinite(us)) and np.all(np.isfinite(vs))):
        raise StepFailureError("leapfrog produced non-finite logit coordinates; try a smaller dt")
    one = dtype(1)
    xs = one / (one + np.exp(-us))
    ys = one / (one + np.exp(-vs))
    if not (np.all((xs > 0) & (xs < 1)) and np.all((ys > 0) & (ys < 1))):
        raise StepFailureError("state is closer to the boundary than floating point can resolve")
    return xs, ys, hamiltonian_logit(k, us, vs)


def integrate(
    k: ReducedConstants,
    s0,
    t_end: float | None = None,
    dt: float = DEFAULT_DT,
    method: Method = "rk4",
    dtype=np.float64,
) -> Trajectory:
    """Integrate the planar system with a fixed step.

    Parameters
    ----------
    k : ReducedConstants
    s0 : State or (x, y)
        Interior initial state.
    t_end : float, optional
        Final time; defaults to ten periods of the linearized oscillation.
    dt : float
        Step size. Samples are taken at multiples of ``dt``; if ``t_end`` is
        not a multiple, one shortened step lands exactly on it.
    method : {"rk4", "leapfrog_logit"}
        Classical fourth-order Runge-Kutta in ``(x, y)``, or Stormer-Verlet
        in logit coordinates (symplectic; cannot leave the open square).
    dtype : numpy floating type
        Working precision. ``np.longdouble`` resolves truncation errors below
        double-precision roundoff.

    Returns
    -------
    Trajectory

    Raises
    ------
    StepFailureError
        A step leaves the open square or produces non-finite values.
    """
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    s0 = check_state(s0)
    if t_end is None:
        t_end = 10 * linearized_period(k)
    if not (dt > 0 and t_end > 0):
        raise ValueError("dt and t_end must be positive")
    t = _sample_times(float(t_end), float(dt))
    steps = np.diff(t).tolist()
    if method == "rk4":
        xs, ys, hs = _integrate_rk4(k, s0, steps, dtype)
    else:
        xs, ys, hs = _integrate_leapfrog(k, s0, steps, dtype)
    return Trajectory(t, xs, ys, np.asarray(hs), method, float(dt))


def _leapfrog_step(k, x, y, h):
    a, b, c, d = k
    u, v = math.log(x) - math.log1p(-x), math.log(y) - math.log1p(-y)
    u += h / 2 * (a - (a + b) / (1 + math.exp(-v)))
    v += h * ((c + d) / (1 + math.exp(-u)) - c)
    u += h / 2 * (a - (a + b) / (1 + math.exp(-v)))
    return 1 / (1 + math.exp(-u)), 1 / (1 + math.exp(-v))


_STEPPERS = {"rk4": _rk4_step, "leapfrog_logit": _leapfrog_step}


def estimate_period(
    k: ReducedConstants,
    s0,
    dt: float = DEFAULT_DT,
    method: Method = "rk4",
    t_max: float = 1e4,
    full_output: bool = False,
):
    """Period of the closed orbit through ``s0``.

    The section is the vertical line through the equilibrium, ``x = x0``.
    Crossings are detected between samples and then located by root finding
    on a single sub-step of the integrator from the bracketing sample. The
    period is the time between two successive crossings in the same
    direction.

    Parameters
    ----------
    k, s0 : constants and interior starting state (not the equilibrium).
    dt : step size.
    method : integrator used to step between samples.
    t_max : give up after this much integration time.
    full_output : bool
        Also return the state at the second crossing.

    Returns
    -------
    period : float
    crossing : State
        Only if ``full_output`` is true.

    Raises
    ------
    DomainError
        ``s0`` is the equilibrium.
    NonConvergenceError
        No return within ``t_max``.
    """
    s0 = check_state(s0)
    cp = critical_point(k)
    if (s0.x, s0.y) == (cp.x, cp.y):
        raise DomainError("the equilibrium is a fixed point and has no period")
    if method not in _STEPPERS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    step = _STEPPERS[method]
    kf = k.as_floats()
    xc = float(cp.x)
    x, y = float(s0.x), float(s0.y)
    t = 0.0
    first = None
    n_max = int(math.ceil(t_max / dt))
    for i in range(n_max):
        xn, yn = step(kf, x, y, dt)
        _check_interior(xn, yn, t + dt)
        g0, g1 = x - xc, xn - xc
        if (g0 < 0 <= g1) or (g0 > 0 >= g1):
            direction = 1 if g1 > g0 else -1
            tau = brentq(lambda h: step(kf, x, y, h)[0] - xc, 0.0, dt, xtol=1e-15, rtol=8.9e-16) if g1 != 0 else dt
            t_cross = t + tau
            if first is None:
                first = (t_cross, direction)
            elif direction == first[1]:
                period = t_cross - first[0]
                if full_output:
                    xs, ys = step(kf, x, y, tau)
                    return period, State(xs, ys)
                return period
        x, y = xn, yn
        t = (i + 1) * dt
    raise NonConvergenceError(f"orbit did not return to the section within t_max={t_max!r}")

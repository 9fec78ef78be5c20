"""Equilibrium analysis of 2x2 bimatrix games.

Mixed strategies are written by the probability of the first pure strategy:
``x`` for the scientist playing ``s1`` and ``y`` for the publisher playing
``p1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Real

from .errors import DegenerateGameError
from .payoff import BimatrixGame

__all__ = [
    "MixedProfile",
    "PureProfile",
    "Scientist",
    "Publisher",
    "Deviation",
    "BestResponseCycle",
    "mixed_nash",
    "verify_equilibrium",
    "pure_equilibria",
    "best_response_cycle",
    "expected_payoffs",
    "equilibrium_payoffs",
]


class Scientist(Enum):
    s1 = 0
    s2 = 1


class Publisher(Enum):
    p1 = 0
    p2 = 1


@dataclass(frozen=True)
class PureProfile:
    s: Scientist
    p: Publisher

    def __str__(self):
        return f"({self.s.name},{self.p.name})"


@dataclass(frozen=True)
class MixedProfile:
    """A pair of mixed strategies; the complements ``1-x`` and ``1-y`` are implicit."""

    x: Real
    y: Real

    def __post_init__(self):
        for name, v in (("x", self.x), ("y", self.y)):
            if not 0 <= v <= 1:
                raise ValueError(f"{name} must lie in [0, 1], got {v!r}")

    @property
    def scientist(self):
        return (self.x, 1 - self.x)

    @property
    def publisher(self):
        return (self.y, 1 - self.y)


def _exact(v):
    return isinstance(v, (int, Fraction))


def _ratio(num, den):
    if _exact(num) and _exact(den):
        return Fraction(num) / Fraction(den)
    return num / den


def mixed_nash(game: BimatrixGame) -> MixedProfile:
    """Interior mixed equilibrium of a 2x2 game via the indifference conditions.

    ``x0 = (b22-b12) / ((b22-b12) + (b11-b21))`` makes the publisher
    indifferent and ``y0 = (a12-a22) / ((a12-a22) + (a21-a11))`` makes the
    scientist indifferent. Exact inputs (ints, Fractions) give an exact
    result.

    Raises
    ------
    DegenerateGameError
        If either denominator vanishes, or the point falls outside ``[0, 1]^2``.
    """
    (a11, a12), (a21, a22) = game.A
    (b11, b12), (b21, b22) = game.B
    den_x = (b22 - b12) + (b11 - b21)
    den_y = (a12 - a22) + (a21 - a11)
    if den_x == 0 or den_y == 0:
        raise DegenerateGameError(
            "no unique interior equilibrium: "
            f"(b22-b12)+(b11-b21) = {den_x}, (a12-a22)+(a21-a11) = {den_y}"
        )
    x0 = _ratio(b22 - b12, den_x)
    y0 = _ratio(a12 - a22, den_y)
    if not (0 <= x0 <= 1 and 0 <= y0 <= 1):
        raise DegenerateGameError(f"indifference point ({x0}, {y0}) is not a mixed profile")
    return MixedProfile(x0, y0)


def expected_payoffs(game: BimatrixGame, profile: MixedProfile):
    """Return ``(x^T A y, y^T B x)`` for the mixed profile."""
    xs, ys = profile.scientist, profile.publisher
    u_sci = sum(xs[i] * game.A[i][j] * ys[j] for i in range(2) for j in range(2))
    u_pub = sum(ys[j] * game.B[j][i] * xs[i] for i in range(2) for j in range(2))
    return u_sci, u_pub


def equilibrium_payoffs(game: BimatrixGame):
    """Closed-form payoffs at the mixed equilibrium.

    Scientist: ``det A / (a11 - a12 - a21 + a22)``; publisher:
    ``det B / (b11 - b12 - b21 + b22)``. These agree with
    :func:`expected_payoffs` at :func:`mixed_nash`.
    """
    (a11, a12), (a21, a22) = game.A
    (b11, b12), (b21, b22) = game.B
    det_a = a11 * a22 - a12 * a21
    det_b = b11 * b22 - b12 * b21
    den_a = a11 - a12 - a21 + a22
    den_b = b11 - b12 - b21 + b22
    if den_a == 0 or den_b == 0:
        raise DegenerateGameError("equilibrium payoffs undefined for a degenerate game")
    return _ratio(det_a, den_a), _ratio(det_b, den_b)


def verify_equilibrium(game: BimatrixGame, profile: MixedProfile, tol: float = 0.0) -> bool:
    """True iff no pure deviation improves either player's payoff by more than ``tol``.

    Checking pure deviations is enough: a mixed deviation's payoff is a
    convex combination of the pure ones.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    xs, ys = profile.scientist, profile.publisher
    u_sci, u_pub = expected_payoffs(game, profile)
    best_sci = max(sum(game.A[i][j] * ys[j] for j in range(2)) for i in range(2))
    best_pub = max(sum(game.B[j][i] * xs[i] for i in range(2)) for j in range(2))
    return best_sci <= u_sci + tol and best_pub <= u_pub + tol


def _scientist_gain(game, prof: PureProfile):
    j = prof.p.value
    i = prof.s.value
    return game.A[1 - i][j] - game.A[i][j]


def _publisher_gain(game, prof: PureProfile):
    j = prof.p.value
    i = prof.s.value
    return game.B[1 - j][i] - game.B[j][i]


def pure_equilibria(game: BimatrixGame) -> list[PureProfile]:
    """All pure profiles where no player gains strictly by switching.

    Zero-gain deviations do not count, so weak equilibria are included.
    """
    return [
        prof
        for s in Scientist
        for p in Publisher
        if _scientist_gain(game, prof := PureProfile(s, p)) <= 0
        and _publisher_gain(game, prof) <= 0
    ]


@dataclass(frozen=True)
class Deviation:
    source: PureProfile
    player: str
    gain: Real
    target: PureProfile


@dataclass(frozen=True)
class BestResponseCycle:
    """Result of :func:`best_response_cycle`.

    ``steps`` holds the closed loop of deviations when one exists. When the
    iteration reaches a pure equilibrium instead, ``steps`` holds the path
    leading there (possibly empty) and ``equilibrium`` is set.
    """

    steps: tuple[Deviation, ...]
    equilibrium: PureProfile | None = None
    tie_break: str = "scientist"

    @property
    def is_cycle(self) -> bool:
        return self.equilibrium is None

    @property
    def profiles(self) -> list[PureProfile]:
        return [step.source for step in self.steps]


def best_response_cycle(
    game: BimatrixGame, start: PureProfile = PureProfile(Scientist.s1, Publisher.p1)
) -> BestResponseCycle:
    """Follow strictly improving unilateral switches from ``start``.

    One player moves per step. When both players could improve, the
    scientist moves. Iteration stops at the first repeated profile, and
    only the closed loop is returned, or at a pure equilibrium.
    """
    path: list[Deviation] = []
    seen = {start: 0}
    prof = start
    while True:
        g_sci = _scientist_gain(game, prof)
        g_pub = _publisher_gain(game, prof)
        if g_sci > 0:
            nxt = PureProfile(Scientist(1 - prof.s.value), prof.p)
            path.append(Deviation(prof, "scientist", g_sci, nxt))
        elif g_pub > 0:
            nxt = PureProfile(prof.s, Publisher(1 - prof.p.value))
            path.append(Deviation(prof, "publisher", g_pub, nxt))
        else:
            return BestResponseCycle(tuple(path), equilibrium=prof)
        if nxt in seen:
            return BestResponseCycle(tuple(path[seen[nxt]:]))
        seen[nxt] = len(path)
        prof = nxt

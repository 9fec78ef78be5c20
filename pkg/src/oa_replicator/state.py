"""Value types shared by the dynamics and Hamiltonian modules."""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real

from .errors import DomainError, NonPositiveConstantsError

__all__ = ["State", "ReducedConstants", "check_state"]


@dataclass(frozen=True)
class State:
    """A point of the open unit square: ``x`` is the share of open-access
    scientists, ``y`` the share of publishers accepting open access.

    Boundary points are rejected. The boundary lines are invariant under the
    dynamics and lie outside the domain of the Hamiltonian.
    """

    x: Real
    y: Real

    def __post_init__(self):
        for name, v in (("x", self.x), ("y", self.y)):
            if not (math.isfinite(v) and 0 < v < 1):
                raise DomainError(f"state {name}={v!r} is not strictly inside (0, 1)")

    def __iter__(self):
        yield self.x
        yield self.y


def check_state(s) -> State:
    """Coerce an ``(x, y)`` pair to :class:`State`."""
    if isinstance(s, State):
        return s
    x, y = s
    return State(x, y)


@dataclass(frozen=True)
class ReducedConstants:
    """The four positive constants of the planar replicator system.

    ``a = a12-a22`` and ``b = a21-a11`` come from the scientist matrix; ``c``
    and ``d`` from the publisher matrix, with the indexing fixed by the
    chosen convention (see :func:`oa_replicator.dynamics.reduced_constants`).
    """

    a: Real
    b: Real
    c: Real
    d: Real

    def __post_init__(self):
        bad = [
            f"{name}={v!r}"
            for name, v in zip("abcd", (self.a, self.b, self.c, self.d))
            if not (math.isfinite(v) and v > 0)
        ]
        if bad:
            raise NonPositiveConstantsError(f"constants must be positive and finite: {', '.join(bad)}")

    def __iter__(self):
        yield from (self.a, self.b, self.c, self.d)

    def as_floats(self):
        return tuple(float(v) for v in self)

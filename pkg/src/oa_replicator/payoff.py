"""Economic parameters of the open-access game and the payoff matrices they induce.

The scientist chooses between ``s1`` (publish open access) and ``s2``
(conventional publishing); the publisher between ``p1`` (accept open access)
and ``p2`` (decline it).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from fractions import Fraction
from numbers import Real
from typing import Sequence

import numpy as np

from .errors import InvalidParametersError

__all__ = [
    "OpenAccessParameters",
    "ValidationReport",
    "BimatrixGame",
    "validate",
    "payoff_matrices",
    "payoff_differences",
    "PARAMETER_NAMES",
]

PARAMETER_NAMES = ("R", "r", "I", "iota", "L", "G", "P")


@dataclass(frozen=True)
class OpenAccessParameters:
    """The seven economic scalars of the game, in dimensionless utility units.

    Attributes
    ----------
    R : reputation payoff of a publication.
    r : reputation lost by publishing open access.
    I : impact payoff, shared by scientist and publisher.
    iota : impact lost when the journal is not openly available.
    L : expenses of running open access.
    G : moderate journal price.
    P : exorbitant profit of non-open-access publishing.

    Construction does not check the constraints; use :func:`validate`.
    """

    R: Real
    r: Real
    I: Real  # noqa: E741
    iota: Real
    L: Real
    G: Real
    P: Real

    @classmethod
    def from_mapping(cls, values):
        missing = [k for k in PARAMETER_NAMES if k not in values]
        if missing:
            raise KeyError(f"missing parameter(s): {', '.join(missing)}")
        return cls(**{k: values[k] for k in PARAMETER_NAMES})

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _finite(*values):
    return all(math.isfinite(v) for v in values)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of :func:`validate`: one ``(constraint, satisfied)`` pair per check."""

    results: tuple[tuple[str, bool], ...]

    @property
    def ok(self) -> bool:
        return all(passed for _, passed in self.results)

    @property
    def violations(self) -> list[str]:
        return [name for name, passed in self.results if not passed]

    def __bool__(self):
        return self.ok

    def summary(self) -> str:
        n_ok = sum(passed for _, passed in self.results)
        return f"{n_ok}/{len(self.results)} constraints satisfied"

    def lines(self) -> list[str]:
        return [f"{'pass' if passed else 'FAIL'}  {name}" for name, passed in self.results]


def validate(params: OpenAccessParameters, require_derived: bool = False) -> ValidationReport:
    """Check every constraint on the parameters and report all violations.

    Comparisons are strict with zero tolerance. A constraint involving a
    non-finite value counts as violated.

    Parameters
    ----------
    params : OpenAccessParameters
    require_derived : bool, default False
        Also require ``G + I > L/2``. Only the derived publisher convention
        needs it, to keep its ``d`` constant positive.

    Returns
    -------
    ValidationReport
    """
    R, r, I, iota, L, G, P = (getattr(params, k) for k in PARAMETER_NAMES)
    checks = [
        ("R > 0", _finite(R) and R > 0),
        ("0 < r < R", _finite(r, R) and 0 < r < R),
        ("I > 0", _finite(I) and I > 0),
        ("0 < iota < I", _finite(iota, I) and 0 < iota < I),
        ("iota < r", _finite(iota, r) and iota < r),
        ("L, G, P > 0", _finite(L, G, P) and L > 0 and G > 0 and P > 0),
        ("G + P - L > r - iota", _finite(G, P, L, r, iota) and G + P - L > r - iota),
    ]
    if require_derived:
        checks.append(("G + I > L/2", _finite(G, I, L) and G + I > L / 2))
    return ValidationReport(tuple(checks))


def _as_matrix(m, name):
    rows = tuple(tuple(row) for row in m)
    if len(rows) != 2 or any(len(row) != 2 for row in rows):
        raise ValueError(f"{name} must be a 2x2 matrix, got {m!r}")
    for row in rows:
        for v in row:
            if not isinstance(v, Real) or not math.isfinite(v):
                raise ValueError(f"{name} entries must be finite reals, got {v!r}")
    return rows


@dataclass(frozen=True)
class BimatrixGame:
    """A 2x2 bimatrix game.

    ``A[i][j]`` is the scientist's payoff for ``s_{i+1}`` against ``p_{j+1}``.
    ``B[j][i]`` is the publisher's payoff for ``p_{j+1}`` against ``s_{i+1}``,
    so the rows of ``B`` are publisher strategies.

    Entries may be ints, :class:`~fractions.Fraction` or floats; exact
    entries keep downstream equilibrium formulas exact.
    """

    A: Sequence[Sequence[Real]]
    B: Sequence[Sequence[Real]]

    def __post_init__(self):
        object.__setattr__(self, "A", _as_matrix(self.A, "A"))
        object.__setattr__(self, "B", _as_matrix(self.B, "B"))

    @property
    def is_exact(self) -> bool:
        return all(isinstance(v, (int, Fraction)) for row in self.A + self.B for v in row)

    def as_arrays(self):
        """Return ``(A, B)`` as float64 arrays."""
        return (np.array(self.A, dtype=float), np.array(self.B, dtype=float))


def payoff_matrices(params: OpenAccessParameters) -> BimatrixGame:
    """Build the payoff matrices of the open-access game.

    Raises
    ------
    InvalidParametersError
        If :func:`validate` reports any violation; the report is attached.
    """
    report = validate(params)
    if not report.ok:
        raise InvalidParametersError(report)
    R, r, I, iota, L, G, P = (getattr(params, k) for k in PARAMETER_NAMES)
    # Halving goes through Fraction for exact inputs so L/2 stays rational.
    half_L = Fraction(L) / 2 if isinstance(L, (int, Fraction)) else L / 2
    A = [
        [(R - r) + I - half_L - G, (R - r) + I - L],
        [R + (I - iota) - G, R + (I - iota) - G - P],
    ]
    B = [
        [G + I - half_L, G + (I - iota) - L],
        [0, G + (I - iota) + P],
    ]
    return BimatrixGame(A, B)


def payoff_differences(game: BimatrixGame) -> dict[str, Real]:
    """The four payoff differences that are positive for every valid open-access game.

    Keys are ``"a12-a22"``, ``"a21-a11"``, ``"b22-b21"`` and ``"b11-b12"``
    (1-based matrix indices).
    """
    (a11, a12), (a21, a22) = game.A
    (b11, b12), (b21, b22) = game.B
    return {
        "a12-a22": a12 - a22,
        "a21-a11": a21 - a11,
        "b22-b21": b22 - b21,
        "b11-b12": b11 - b12,
    }

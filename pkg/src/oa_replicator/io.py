"""Flat key-value config files, number rendering and SVG portraits.

Config grammar, one entry per line::

    # comment
    R = 10
    iota = 1/2
    A = 9 11 ; 11 3

Game values are parsed exactly (``Fraction``), so ``0.1`` means one tenth.
Matrices are row-major with ``;`` separating rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConfigError
from .payoff import PARAMETER_NAMES, BimatrixGame, OpenAccessParameters
from .state import ReducedConstants

__all__ = [
    "GameInput",
    "parse_config",
    "parse_number",
    "parse_matrix",
    "format_number",
    "render_svg",
    "SETTING_KEYS",
]

CONSTANT_NAMES = ("a", "b", "c", "d")
MATRIX_NAMES = ("A", "B")
SETTING_KEYS = ("convention", "method", "dt", "t_end", "x0", "y0", "n_levels", "resolution")


def parse_number(text: str) -> Fraction:
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"not a number: {text!r}") from None
    return value


def parse_matrix(text: str):
    rows = [row.split() for row in text.split(";")]
    if len(rows) != 2 or any(len(row) != 2 for row in rows):
        raise ConfigError(f"matrix must be 2x2 written as 'a b ; c d', got {text!r}")
    return [[parse_number(v) for v in row] for row in rows]


def format_number(v) -> str:
    """Shortest round-trip decimal; integers (including integral Fractions) without a point."""
    if isinstance(v, Fraction) and v.denominator == 1:
        return str(v.numerator)
    if isinstance(v, int):
        return str(v)
    return repr(float(v))


@dataclass
class GameInput:
    """Exactly one of the three ways to specify a game, plus run settings."""

    parameters: OpenAccessParameters | None = None
    game: BimatrixGame | None = None
    constants: ReducedConstants | None = None
    settings: dict = field(default_factory=dict)

    @property
    def mode(self) -> str:
        if self.parameters is not None:
            return "parameters"
        if self.game is not None:
            return "matrices"
        return "constants"


def _read_entries(lines, source):
    entries = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.rstrip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise ConfigError(f"{source}:{lineno}: empty key or value")
        if key in entries:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        entries[key] = value
    return entries


def parse_config(text: str = "", overrides=(), source: str = "<config>") -> GameInput:
    """Parse config text; ``overrides`` are extra ``key=value`` strings that win over the file.

    Raises
    ------
    ConfigError
        Unknown or duplicate keys, unparseable numbers, missing parameters,
        or not exactly one input mode.
    """
    entries = _read_entries(text.splitlines(), source)
    entries.update(_read_entries(overrides, "--set"))

    known = set(PARAMETER_NAMES) | set(CONSTANT_NAMES) | set(MATRIX_NAMES) | set(SETTING_KEYS)
    unknown = sorted(set(entries) - known)
    if unknown:
        raise ConfigError(f"unknown key(s): {', '.join(unknown)}")

    modes = {
        "parameters": [k for k in PARAMETER_NAMES if k in entries],
        "matrices": [k for k in MATRIX_NAMES if k in entries],
        "constants": [k for k in CONSTANT_NAMES if k in entries],
    }
    present = [m for m, keys in modes.items() if keys]
    if len(present) != 1:
        found = ", ".join(present) if present else "none"
        raise ConfigError(f"exactly one input mode (parameters, matrices or constants) required; found {found}")
    mode = present[0]

    gi = GameInput(settings={k: entries[k] for k in SETTING_KEYS if k in entries})
    if mode == "parameters":
        missing = [k for k in PARAMETER_NAMES if k not in entries]
        if missing:
            raise ConfigError(f"missing parameter(s): {', '.join(missing)}")
        gi.parameters = OpenAccessParameters(**{k: parse_number(entries[k]) for k in PARAMETER_NAMES})
    elif mode == "matrices":
        missing = [k for k in MATRIX_NAMES if k not in entries]
        if missing:
            raise ConfigError(f"missing matrix {', '.join(missing)}")
        gi.game = BimatrixGame(parse_matrix(entries["A"]), parse_matrix(entries["B"]))
    else:
        missing = [k for k in CONSTANT_NAMES if k not in entries]
        if missing:
            raise ConfigError(f"missing constant(s): {', '.join(missing)}")
        gi.constants = ReducedConstants(*(parse_number(entries[k]) for k in CONSTANT_NAMES))
    return gi


SVG_SIZE = 600


def _px(v: float) -> str:
    return repr(float(v) * SVG_SIZE)


def _py(v: float) -> str:
    return repr((1.0 - float(v)) * SVG_SIZE)


def render_svg(curves, center, description: str = "") -> str:
    """Render level curves and the equilibrium into a 600x600 SVG covering the unit square.

    ``y`` points up. Output depends only on the inputs, so identical inputs
    give byte-identical documents.
    """
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" '
        f'viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">',
    ]
    if description:
        out.append(f"<desc>{description}</desc>")
    out.append(
        f'<rect x="0" y="0" width="{SVG_SIZE}" height="{SVG_SIZE}" fill="none" stroke="black" stroke-width="1"/>'
    )
    for curve in curves:
        if curve.is_degenerate:
            continue
        pts = list(zip(curve.x[:-1], curve.y[:-1]))
        d = "M " + " L ".join(f"{_px(x)} {_py(y)}" for x, y in pts) + " Z"
        level = format_number(curve.level)
        out.append(f'<path data-level="{level}" d="{d}" fill="none" stroke="black" stroke-width="1"/>')
    cx, cy = center
    out.append(f'<circle cx="{_px(cx)}" cy="{_py(cy)}" r="4" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"

"""Command line front end.

Exit codes: 0 success, 1 domain violation, 2 malformed input, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import dynamics, game as game_core, symplectic as ham
from .errors import ConfigError, OAReplicatorError
from .io import GameInput, format_number, parse_config, parse_number, render_svg
from .payoff import payoff_differences, payoff_matrices, validate
from .state import State

# Reserved for sampling-based checks; the deterministic core never reads it.
SEED_ENV = "OA_REPLICATOR_SEED"


def _load(args) -> GameInput:
    text = ""
    source = "<config>"
    if args.config:
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config!r}: {exc.strerror}") from None
        source = args.config
    return parse_config(text, args.set or (), source=source)


def _setting(args, gi, name, cast, default):
    value = getattr(args, name, None)
    if value is not None:
        return value
    if name in gi.settings:
        try:
            return cast(gi.settings[name])
        except ValueError:
            raise ConfigError(f"bad value for {name}: {gi.settings[name]!r}") from None
    return default


def _real(text):
    return float(parse_number(text))


def _convention(args, gi):
    conv = _setting(args, gi, "convention", str, "derived")
    if conv not in dynamics.CONVENTIONS:
        raise ConfigError(f"convention must be one of {dynamics.CONVENTIONS}, got {conv!r}")
    return conv


def _game(gi):
    if gi.game is not None:
        return gi.game
    if gi.parameters is not None:
        return payoff_matrices(gi.parameters)
    raise ConfigError("this command needs parameters or matrices, not reduced constants")


def _constants(args, gi):
    if gi.constants is not None:
        return gi.constants
    return dynamics.reduced_constants(_game(gi), _convention(args, gi))


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_validate(args):
    gi = _load(args)
    if gi.parameters is None:
        raise ConfigError("validate needs the seven parameters R, r, I, iota, L, G, P")
    report = validate(gi.parameters, require_derived=args.require_derived)
    if args.format == "json":
        doc = {"ok": report.ok, "constraints": [{"name": n, "ok": ok} for n, ok in report.results]}
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        lines = report.lines() + [report.summary()]
        if not report.ok:
            lines.append("violated: " + ", ".join(report.violations))
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if report.ok else 1


def _matrix_lines(name, m):
    return [f"{name} = " + " ; ".join(" ".join(format_number(v) for v in row) for row in m)]


def cmd_payoffs(args):
    gi = _load(args)
    g = _game(gi)
    diffs = payoff_differences(g)
    if args.format == "json":
        doc = {
            "A": [[format_number(v) for v in row] for row in g.A],
            "B": [[format_number(v) for v in row] for row in g.B],
            "differences": {k: format_number(v) for k, v in diffs.items()},
        }
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
        return 0
    lines = _matrix_lines("A", g.A) + _matrix_lines("B", g.B)
    lines += [f"{k} = {format_number(v)}" for k, v in diffs.items()]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_equilibrium(args):
    gi = _load(args)
    conv = _convention(args, gi)
    if gi.constants is not None or conv == "paper":
        point = ham.critical_point(_constants(args, gi))
        x0, y0 = point.x, point.y
    else:
        prof = game_core.mixed_nash(_game(gi))
        x0, y0 = prof.x, prof.y
    if args.format == "json":
        doc = {"x0": float(x0), "y0": float(y0), "exact": {"x0": str(x0), "y0": str(y0)}, "convention": conv}
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        _emit(f"x0={format_number(x0)} y0={format_number(y0)}\n", args.out)
    return 0


def cmd_simulate(args):
    gi = _load(args)
    k = _constants(args, gi)
    x0 = _setting(args, gi, "x0", _real, 0.5)
    y0 = _setting(args, gi, "y0", _real, 0.5)
    dt = _setting(args, gi, "dt", _real, dynamics.DEFAULT_DT)
    t_end = _setting(args, gi, "t_end", _real, None)
    method = _setting(args, gi, "method", str, "rk4")
    if method not in dynamics.METHODS:
        raise ConfigError(f"method must be one of {dynamics.METHODS}, got {method!r}")
    if dt <= 0 or (t_end is not None and t_end <= 0):
        raise ConfigError("dt and t_end must be positive")
    s0 = State(x0, y0)
    traj = dynamics.integrate(k, s0, t_end=t_end, dt=dt, method=method)

    fmt = args.format or "csv"
    if fmt == "csv":
        if args.out:
            traj.to_csv(args.out)
        else:
            traj.to_csv(sys.stdout)
    elif fmt == "json":
        doc = {
            "method": method,
            "dt": dt,
            "t": [float(v) for v in traj.t],
            "x": [float(v) for v in traj.x],
            "y": [float(v) for v in traj.y],
            "H": [float(v) for v in traj.H],
        }
        _emit(json.dumps(doc) + "\n", args.out)
    else:
        raise ConfigError(f"simulate cannot write format {fmt!r}")

    summary = [f"samples={len(traj)} H drift (max-min)={format_number(traj.h_drift())}"]
    if args.period:
        period = dynamics.estimate_period(k, s0, dt=dt)
        summary.append(f"period={format_number(period)}")
    print("\n".join(summary), file=sys.stdout if args.out else sys.stderr)
    return 0


def portrait(k, n_levels=8, resolution=256):
    """Level curves for the default portrait levels and the critical point."""
    levels = ham.portrait_levels(k, n_levels)
    curves = [ham.level_curve(k, level, resolution) for level in levels]
    return curves, ham.critical_point(k)


def cmd_portrait(args):
    gi = _load(args)
    k = _constants(args, gi)
    n_levels = _setting(args, gi, "n_levels", int, 8)
    resolution = _setting(args, gi, "resolution", int, 256)
    if n_levels < 1 or resolution < 16:
        raise ConfigError("n_levels must be >= 1 and resolution >= 16")
    curves, cp = portrait(k, n_levels, resolution)
    fmt = args.format or "svg"
    consts = " ".join(f"{n}={format_number(v)}" for n, v in zip("abcd", k))
    if fmt == "svg":
        levels = " ".join(format_number(c.level) for c in curves)
        desc = f"constants {consts}; equilibrium x0={format_number(cp.x)} y0={format_number(cp.y)}; levels {levels}"
        _emit(render_svg(curves, (cp.x, cp.y), desc), args.out)
    elif fmt == "csv":
        if not args.out:
            raise ConfigError("portrait --format csv needs --out <directory>")
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for i, curve in enumerate(curves):
            rows = ["x,y"] + [f"{format_number(x)},{format_number(y)}" for x, y in zip(curve.x, curve.y)]
            (outdir / f"curve_{i:02d}.csv").write_text("\n".join(rows) + "\n")
        print(f"wrote {len(curves)} curves to {outdir}")
    else:
        doc = {
            "constants": {n: float(v) for n, v in zip("abcd", k)},
            "critical_point": [float(cp.x), float(cp.y)],
            "curves": [
                {"level": c.level, "x": [float(v) for v in c.x], "y": [float(v) for v in c.y]} for c in curves
            ],
        }
        _emit(json.dumps(doc) + "\n", args.out)
    return 0


def format_cycle(result) -> str:
    if not result.is_cycle:
        return f"pure equilibrium {result.equilibrium}; no cycle"
    parts = [str(result.steps[0].source)]
    for step in result.steps:
        parts.append(f"-[{step.player} +{format_number(step.gain)}]-> {step.target}")
    return " ".join(parts)


def cmd_cycle(args):
    gi = _load(args)
    result = game_core.best_response_cycle(_game(gi))
    if args.format == "json":
        doc = {
            "cycle": result.is_cycle,
            "equilibrium": str(result.equilibrium) if result.equilibrium else None,
            "tie_break": result.tie_break,
            "steps": [
                {"from": str(s.source), "player": s.player, "gain": format_number(s.gain), "to": str(s.target)}
                for s in result.steps
            ],
        }
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        _emit(format_cycle(result) + "\n", args.out)
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value config file")
    common.add_argument("--set", action="append", metavar="KEY=VALUE", help="config entry; repeatable, overrides --config")
    common.add_argument("--convention", choices=dynamics.CONVENTIONS)
    common.add_argument("--format", choices=("csv", "json", "svg"))
    common.add_argument("--out", help="output path (directory for portrait csv)")

    parser = argparse.ArgumentParser(
        prog="oa-replicator",
        description="Scientists-vs-publishers open-access game: equilibria, replicator dynamics, Hamiltonian portraits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the economic parameter constraints")
    p.add_argument("--require-derived", action="store_true", help="also require G + I > L/2")
    p.set_defaults(func=cmd_validate)

    sub.add_parser("payoffs", parents=[common], help="print the payoff matrices").set_defaults(func=cmd_payoffs)
    sub.add_parser("equilibrium", parents=[common], help="mixed Nash equilibrium").set_defaults(func=cmd_equilibrium)

    p = sub.add_parser("simulate", parents=[common], help="integrate the replicator dynamics")
    p.add_argument("--x0", type=float, help="initial open-access share of scientists")
    p.add_argument("--y0", type=float, help="initial open-access share of publishers")
    p.add_argument("--dt", type=float)
    p.add_argument("--t-end", dest="t_end", type=float)
    p.add_argument("--method", choices=dynamics.METHODS)
    p.add_argument("--period", action="store_true", help="also estimate the orbit period")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("portrait", parents=[common], help="level curves of the Hamiltonian")
    p.add_argument("--n-levels", dest="n_levels", type=int)
    p.add_argument("--resolution", type=int)
    p.set_defaults(func=cmd_portrait)

    sub.add_parser("cycle", parents=[common], help="best-response cycle over pure profiles").set_defaults(func=cmd_cycle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OAReplicatorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())

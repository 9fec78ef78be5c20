"""Acceptance gate.

Each test checks one criterion at its stated tolerance and records a
``[PASS]`` or ``[FAIL]`` line, printed in the pytest terminal summary.
"""

import math
import re
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, K_REF, random_valid_params
from oa_replicator import (
    BimatrixGame,
    ReducedConstants,
    best_response_cycle,
    critical_point,
    estimate_period,
    expected_payoffs,
    full_replicator_field,
    grad_H,
    hamiltonian,
    hamiltonian_vector_field,
    hessian_at_critical,
    integrate,
    payoff_differences,
    linearized_frequency,
    mixed_nash,
    payoff_matrices,
    pure_equilibria,
    reduced_constants,
    reduced_field,
    verify_equilibrium,
)
from oa_replicator.cli import main
from oa_replicator.symplectic import energy, winding_number

GOLDEN_SVG = Path(__file__).parent / "data" / "portrait_1_2_2_3.svg"
CYCLE = ["(s1,p1)", "(s2,p1)", "(s2,p2)", "(s1,p2)"]


def record(number, name, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {number} {name}: {detail}")
    assert ok, detail


def test_1_equilibrium_reproduction(rng):
    cp = critical_point(K_REF)
    exact = (cp.x, cp.y) == (Fraction(2, 5), Fraction(1, 3))
    worst = 0.0
    for _ in range(100):
        # Any A with a12-a22 = 1, a21-a11 = 2 and B with b22-b12 = 2,
        # b11-b21 = 3 reduces to (1, 2, 2, 3) under the derived convention.
        a11, a22, b12, b21 = rng.uniform(-50, 50, size=4)
        game = BimatrixGame([[a11, a22 + 1], [a11 + 2, a22]], [[b21 + 3, b12], [b21, b12 + 2]])
        nash = mixed_nash(game)
        worst = max(worst, abs(nash.x - 0.4), abs(nash.y - 1 / 3))
    record(1, "equilibrium", exact and worst <= 1e-12, f"critical point {cp.x}, {cp.y}; mixed_nash max error {worst:.2e} (tol 1e-12)")


def test_2_conservation():
    s0 = (0.5, 0.5)
    dev = integrate(K_REF, s0, t_end=20, dt=1e-3).max_h_deviation()
    # Halving check in extended precision: the double-precision drift at
    # dt = 1e-3 sits at the roundoff floor and carries no order information.
    coarse = integrate(K_REF, s0, t_end=20, dt=1e-3, dtype=np.longdouble).max_h_deviation()
    fine = integrate(K_REF, s0, t_end=20, dt=5e-4, dtype=np.longdouble).max_h_deviation()
    ratio = float(coarse / fine)
    lf = integrate(K_REF, s0, t_end=1000, dt=1e-2, method="leapfrog_logit")
    drift = lf.H - lf.H[0]
    slope = np.polyfit(lf.t, drift, 1)[0]
    ok = dev <= 1e-8 and 12 <= ratio <= 20 and abs(slope) < 1e-12
    record(
        2,
        "conservation",
        ok,
        f"rk4 max|dH| {dev:.2e} (tol 1e-8); halving ratio {ratio:.2f} (in [12, 20]); "
        f"leapfrog slope {slope:.2e}/time (tol 1e-12), max|dH| {np.max(np.abs(drift)):.2e}",
    )


def test_3_periodicity():
    s0 = (0.5, 0.5)
    period = estimate_period(K_REF, s0, dt=1e-3, method="leapfrog_logit")
    traj = integrate(K_REF, s0, t_end=period, dt=1e-3, method="leapfrog_logit")
    end = traj.final_state
    dist = math.hypot(end.x - s0[0], end.y - s0[1])
    cp = critical_point(K_REF)
    near = estimate_period(K_REF, (float(cp.x) + 1e-4, float(cp.y)))
    linear = 2 * math.pi / linearized_frequency(K_REF)
    rel = abs(near - linear) / linear
    omega_ok = abs(linearized_frequency(K_REF) - 2 / math.sqrt(5)) <= 1e-15
    ok = dist <= 1e-4 and rel <= 1e-3 and omega_ok
    record(3, "periodicity", ok, f"return distance {dist:.2e} after T={period:.8f} (tol 1e-4); near-equilibrium period rel error {rel:.2e} (tol 1e-3)")


def test_4_structural_identity(rng):
    worst = 0.0
    for _ in range(1000):
        k = ReducedConstants(*rng.uniform(0.05, 20, size=4))
        x, y = rng.uniform(1e-4, 1 - 1e-4, size=2)
        a, b, c, d = k
        vx, vy = hamiltonian_vector_field(k, (x, y))
        fx, fy = reduced_field(k, (x, y))
        sx = x * (1 - x) * (a * (1 - y) + b * y)
        sy = y * (1 - y) * (c * (1 - x) + d * x)
        worst = max(worst, abs(vx - fx) / sx, abs(vy - fy) / sy)
    record(4, "structural identity", worst <= 1e-13, f"max relative difference {worst:.2e} over 1000 systems (tol 1e-13)")


def test_5_gradient_hessian(rng):
    h = 1e-6
    grad_err = 0.0
    for _ in range(200):
        k = ReducedConstants(*rng.uniform(0.1, 10, size=4))
        x, y = rng.uniform(0.05, 0.95, size=2)
        fd = (
            (hamiltonian(k, (x + h, y)) - hamiltonian(k, (x - h, y))) / (2 * h),
            (hamiltonian(k, (x, y + h)) - hamiltonian(k, (x, y - h))) / (2 * h),
        )
        grad_err = max(grad_err, *(abs(g - f) for g, f in zip(grad_H(k, (x, y)), fd)))

    closed_ok = True
    fd_rel = 0.0
    negative = True
    for i in range(100):
        if i == 0:
            k = K_REF
        else:
            k = ReducedConstants(*(Fraction(int(v), 1000) for v in rng.integers(100, 10000, size=4)))
        a, b, c, d = k
        hess = hessian_at_critical(k)
        closed_ok &= hess[0, 0] == -Fraction((c + d) ** 3) / (c * d) and hess[1, 1] == -Fraction((a + b) ** 3) / (a * b)
        closed_ok &= hess[0, 1] == 0 and hess[1, 0] == 0
        negative &= hess[0, 0] < 0 and hess[1, 1] < 0
        cp = critical_point(k)
        x, y = float(cp.x), float(cp.y)
        hx, hy = 1e-3 * min(x, 1 - x), 1e-3 * min(y, 1 - y)
        h0 = hamiltonian(k, (x, y))
        fxx = (hamiltonian(k, (x + hx, y)) - 2 * h0 + hamiltonian(k, (x - hx, y))) / hx**2
        fyy = (hamiltonian(k, (x, y + hy)) - 2 * h0 + hamiltonian(k, (x, y - hy))) / hy**2
        fd_rel = max(fd_rel, abs(fxx / float(hess[0, 0]) - 1), abs(fyy / float(hess[1, 1]) - 1))
    ok = grad_err <= 1e-6 and closed_ok and fd_rel <= 1e-4 and negative
    record(
        5,
        "gradient/hessian",
        ok,
        f"grad fd error {grad_err:.2e} (tol 1e-6); closed form exact: {closed_ok}; "
        f"hessian fd rel error {fd_rel:.2e} (tol 1e-4); negative: {negative}",
    )


def test_6_game_layer(rng):
    diffs_ok = pure_ok = cycle_ok = nash_ok = True
    for _ in range(100):
        game = payoff_matrices(random_valid_params(rng))
        diffs_ok &= all(v > 0 for v in payoff_differences(game).values())
        pure_ok &= pure_equilibria(game) == []
        cycle_ok &= [str(p) for p in best_response_cycle(game).profiles] == CYCLE
        nash_ok &= verify_equilibrium(game, mixed_nash(game), tol=1e-9)
    ok = diffs_ok and pure_ok and cycle_ok and nash_ok
    record(
        "6a",
        "game layer",
        ok,
        f"differences positive: {diffs_ok}; no pure equilibria: {pure_ok}; 4-cycle: {cycle_ok}; nash verified: {nash_ok}",
    )


def test_6_scientist_payoff_closed_form(rng):
    # Formula exactly as stated. It has the opposite sign to the expected
    # payoff at the equilibrium, so this check fails for every game with
    # nonzero det A (see the library's equilibrium_payoffs for the value
    # that matches direct evaluation).
    worst = 0.0
    for _ in range(100):
        game = payoff_matrices(random_valid_params(rng))
        (a11, a12), (a21, a22) = game.A
        stated = (a11 * a22 - a12 * a21) / (a12 - a22 + a21 - a11)
        actual = expected_payoffs(game, mixed_nash(game))[0]
        worst = max(worst, abs(stated - actual))
    record("6b", "scientist payoff det A/(a12-a22+a21-a11)", worst <= 1e-9, f"max |formula - expected payoff| {worst:.3g} (tol 1e-9)")


@pytest.mark.parametrize("convention", ["derived", "paper"])
def test_7_reduction_equivalence(convention, rng):
    worst = 0.0
    for _ in range(1000):
        game = payoff_matrices(random_valid_params(rng))
        k = reduced_constants(game, convention)
        x, y = rng.uniform(0, 1, size=2)
        dx1, _, dy1, _ = full_replicator_field(game, (x, 1 - x), (y, 1 - y), convention)
        fx, fy = reduced_field(k, (x, y))
        worst = max(worst, abs(dx1 - fx), abs(dy1 - fy))
    record(f"7-{convention}", "reduction equivalence", worst <= 1e-12, f"max difference {worst:.2e} over 1000 games (tol 1e-12)")


def _run_portrait(path):
    args = ["portrait", "--set", "a=1", "--set", "b=2", "--set", "c=2", "--set", "d=3", "--out", str(path)]
    assert main(args) == 0
    return path.read_bytes()


def _svg_curves(svg):
    for level, d in re.findall(r'<path data-level="([^"]+)" d="([^"]+)"', svg):
        nums = np.array([float(t) for t in re.findall(r"[-+0-9.eE]+", d)]).reshape(-1, 2)
        xs = nums[:, 0] / 600
        ys = 1 - nums[:, 1] / 600
        yield float(level), np.append(xs, xs[0]), np.append(ys, ys[0])


def test_8_portrait_golden(tmp_path):
    first = _run_portrait(tmp_path / "a.svg")
    second = _run_portrait(tmp_path / "b.svg")
    identical = first == second
    golden = GOLDEN_SVG.read_bytes() == first
    curves = list(_svg_curves(first.decode()))
    worst = 0.0
    winds = []
    for level, xs, ys in curves:
        worst = max(worst, float(np.max(np.abs(energy(K_REF, xs, ys) - level))))
        winds.append(winding_number(xs, ys, (0.4, 1 / 3)))
    ok = identical and golden and len(curves) == 8 and worst <= 1e-10 and winds == [1] * 8
    record(
        8,
        "portrait golden",
        ok,
        f"byte-identical runs: {identical}; matches golden: {golden}; {len(curves)} curves; "
        f"max vertex |H-level| {worst:.2e} (tol 1e-10); winding numbers {winds}",
    )

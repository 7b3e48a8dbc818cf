import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringres.dynamics import (
    CENTRE,
    SADDLE,
    angle_period,
    bifurcation_scan,
    classify,
    find_equilibria,
    integrate,
    libration,
    libration_period,
    pendulum_amplitude,
    portrait,
    separatrix_amplitude,
)
from ringres.errors import InapplicableError, IntegrationError, UnboundedError
from ringres.resonance import ReducedHamiltonian


def pendulum(depth=1.0, mult=1):
    """``x**2 / 2 - depth cos(mult q)``."""
    return ReducedHamiltonian(
        np.array([0.0, 0.0, 0.5]), [(mult, np.array([-depth]))], angle_name="theta", action_name="I"
    )


def test_pendulum_equilibria():
    pts = find_equilibria(pendulum(), window=(-3.0, 3.0))
    assert [(p.kind, p.angle) for p in pts] == [(CENTRE, 0.0), (SADDLE, np.pi)]
    for p in pts:
        assert abs(p.action) < 1e-12
        assert abs(p.hessian_det) == pytest.approx(1.0)
        assert not p.degenerate


def test_equilibria_are_stationary():
    h = ReducedHamiltonian(
        np.array([0.0, -0.3, 0.5, 0.1]), [(2, np.array([-1.0, 0.2])), (4, np.array([0.3]))], angle_name="theta"
    )
    pts = find_equilibria(h, window=(-5.0, 5.0))
    assert len(pts) >= 4
    for p in pts:
        hx, hq = h.gradient(p.action, p.angle)
        assert abs(hx) < 1e-10 and abs(hq) < 1e-10
        assert classify(h, p.action, p.angle)[0] == p.kind


def test_pendulum_amplitudes_agree():
    lib = libration(pendulum(), find_equilibria(pendulum(), window=(-3.0, 3.0)))
    assert lib.pendulum_semi_amplitude == pytest.approx(2.0, rel=1e-14)
    assert lib.separatrix_amplitude == pytest.approx(2.0, rel=1e-10)
    assert lib.centre.kind == CENTRE


def test_amplitude_scales_as_root_of_depth():
    a = pendulum_amplitude(pendulum(1.0))
    b = pendulum_amplitude(pendulum(2.0))
    assert b / a == pytest.approx(np.sqrt(2.0), rel=1e-14)


def test_pendulum_formula_inapplicable():
    with pytest.raises(InapplicableError):
        pendulum_amplitude(pendulum(-1.0))
    lindblad_like = pendulum()
    lindblad_like.angle_name = "psi"
    with pytest.raises(InapplicableError):
        pendulum_amplitude(lindblad_like)


def test_no_saddle_or_centre():
    h = ReducedHamiltonian(np.array([0.0, 0.0, 0.5]), [], angle_name="theta")
    with pytest.raises(UnboundedError):
        libration(h, [])
    centre = find_equilibria(pendulum(), window=(-3.0, 3.0))[0]
    with pytest.raises(UnboundedError):
        separatrix_amplitude(pendulum(), centre, [centre])


def test_small_oscillation_period():
    h = pendulum()
    centre = find_equilibria(h, window=(-3.0, 3.0))[0]
    T = libration_period(h, centre)
    assert T == pytest.approx(2 * np.pi, rel=1e-14)
    tr = integrate(h, (1e-4, 0.0), (0.0, T), T / 400)
    assert tr.action[-1] == pytest.approx(1e-4, rel=1e-6)
    assert abs(tr.angle[-1]) < 1e-9
    saddle = find_equilibria(h, window=(-3.0, 3.0))[1]
    with pytest.raises(InapplicableError):
        libration_period(h, saddle)


def test_reversibility():
    h = pendulum()
    fwd = integrate(h, (0.7, 0.3), (0.0, 30.0), 0.01)
    back = integrate(h, (fwd.action[-1], fwd.angle[-1]), (30.0, 0.0), 0.01)
    assert back.action[-1] == pytest.approx(0.7, abs=1e-9)
    assert back.angle[-1] == pytest.approx(0.3, abs=1e-9)
    assert fwd.drift < 1e-12


@settings(max_examples=25)
@given(st.floats(-1.5, 1.5), st.floats(-3.0, 3.0), st.floats(0.5, 10.0))
def test_mirror_symmetry_of_orbits(x0, q0, t):
    # (x, q, t) -> (x, -q, -t) maps orbits to orbits
    h = ReducedHamiltonian(np.array([0.0, 0.1, 0.5]), [(1, np.array([-1.0, 0.2])), (2, np.array([0.3]))])
    a = integrate(h, (x0, q0), (0.0, t), 0.01, max_drift=1e-7)
    b = integrate(h, (x0, -q0), (0.0, -t), 0.01, max_drift=1e-7)
    assert b.action[-1] == pytest.approx(a.action[-1], abs=1e-8)
    assert b.angle[-1] == pytest.approx(-a.angle[-1], abs=1e-8)


def test_integration_checks():
    h = pendulum()
    with pytest.raises(ValueError):
        integrate(h, (0.1, 0.0), (0.0, 1.0), 0.0)
    with pytest.raises(IntegrationError):
        integrate(h, (1.9, 0.0), (0.0, 50.0), 1.0)
    many = integrate(h, (np.array([0.1, 0.2]), np.array([0.0, 1.0])), (0.0, 1.0), 0.1, n_out=3)
    assert many.action.shape == (3, 2)
    assert many.t[-1] == pytest.approx(1.0)


def test_angle_period():
    assert angle_period(pendulum(mult=2)) == pytest.approx(np.pi)
    h = ReducedHamiltonian(np.array([0.0, 0.0, 1.0]), [(4, np.array([1.0])), (6, np.array([1.0]))])
    assert angle_period(h) == pytest.approx(np.pi)


def test_portrait_shapes():
    h = pendulum()
    Q, X, E, sep = portrait(h, n_angle=21, n_action=11, window=(-3.0, 3.0))
    assert Q.shape == X.shape == E.shape == (11, 21)
    np.testing.assert_allclose(E, h(X, Q))
    assert sep.shape[1] == 3 and len(sep) > 0
    np.testing.assert_allclose(h(sep[:, 1], sep[:, 0]), 1.0, atol=1e-9)


def test_low_eccentricity_corotation_amplitudes(ctx):
    # separatrix and pendulum estimates agree while the island is small
    for body in ("AS", "HA"):
        lib = libration(ctx.reduced(body, "1:1", 1e-3))
        assert lib.separatrix_amplitude == pytest.approx(lib.pendulum_semi_amplitude, rel=0.03)


def test_pitchfork_in_synthetic_family():
    # x^2/2 + (e - 0.5) cos(q) flips stability on both symmetry lines at e = 0.5
    def build(e):
        return ReducedHamiltonian(np.array([0.0, 0.0, 0.5]), [(1, np.array([e - 0.5]))], angle_name="theta")

    events = bifurcation_scan(build, (0.1, 0.9), n_steps=9, n_grid=16, window=(-2.0, 2.0))
    assert events
    assert all(abs(ev.e_crit - 0.5) <= 1e-3 for ev in events)


@pytest.mark.slow
def test_corotation_saddle_node(ctx):
    events = bifurcation_scan(lambda e: ctx.reduced("HA", "1:1", e), (0.32, 0.34), n_steps=5, n_grid=32)
    assert [ev.kind for ev in events] == ["saddle-node"]
    assert events[0].e_crit == pytest.approx(0.328, abs=0.005)


def test_scan_arguments():
    with pytest.raises(ValueError):
        bifurcation_scan(lambda e: pendulum(), (0.5, 0.1))
    with pytest.raises(ValueError):
        bifurcation_scan(lambda e: pendulum(), (0.1, 0.5), n_steps=1)

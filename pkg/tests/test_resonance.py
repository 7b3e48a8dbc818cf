from fractions import Fraction

import numpy as np
import pytest
import sympy as sy
from hypothesis import given
from hypothesis import strategies as st

from ringres.body import BodyParams, preset
from ringres.errors import ConfigurationError, NoBracketError, NonRealFrequencyError
from ringres.potential import PotentialModel
from ringres.reproduce import ACTION_MAPS, symplectic_defect
from ringres.resonance import (
    TRANSFORMS,
    ResonantSystem,
    keplerian_radius,
    lindblad_levels,
    parse_label,
    radius_discrepancy,
    reduce_corotation,
    reduce_lindblad,
    resonance_residual,
    resonant_radius,
)

LABELS = ("1:1", "1:2", "1:3")


@pytest.fixture(scope="module")
def systems():
    out = {}
    for b in ("AS", "HA"):
        m = PotentialModel(preset(b))
        for label in LABELS:
            out[(b, label)] = ResonantSystem(m, label, rho_order=8)
    return out


@pytest.mark.parametrize("label", LABELS)
def test_resonant_radius_solves_condition(model, label):
    p, q = parse_label(label)
    spec = resonant_radius(model, p, q)
    scale = abs(spec.n_star)
    assert abs(resonance_residual(model, spec.r_res, p, q)) < 1e-12 * scale
    assert radius_discrepancy(model, p, q) < 0.1
    assert spec.m == -p and spec.j == q - p


def test_sphere_resonances_are_keplerian():
    b = BodyParams(600.0, 600.0, 600.0, 1e21, 8 * 3600.0)
    m = PotentialModel(b)
    for label in LABELS:
        p, q = parse_label(label)
        spec = resonant_radius(m, p, q)
        assert spec.r_res == pytest.approx(keplerian_radius(b, p, q), rel=1e-12)


def test_corotation_radius_value():
    m = PotentialModel(preset("AS"))
    assert resonant_radius(m, 1, 1).r_res == pytest.approx(1124.59, abs=0.01)


def test_radius_errors():
    m = PotentialModel(preset("AS"))
    with pytest.raises(NoBracketError):
        resonant_radius(m, 1, 1, window=(1.5, 2.0))
    with pytest.raises(NonRealFrequencyError):
        resonant_radius(PotentialModel(preset("HA"), ell_max=8), 1, 1, window=(0.01, 0.03))
    with pytest.raises(ValueError):
        keplerian_radius(preset("AS"), 0, 1)
    for bad in ("1-2", "a:b", "0:1", "1:-1"):
        with pytest.raises(ConfigurationError):
            parse_label(bad)


@pytest.mark.parametrize("label", ["1:2", "1:3"])
def test_change_of_actions_is_canonical(label):
    assert symplectic_defect(label) == [[0, 0], [0, 0]]
    # the action map is the inverse transpose of the angle map
    A = sy.Matrix(TRANSFORMS[label].tolist())
    M = sy.Matrix([[sy.Rational(v.numerator, v.denominator) for v in row] for row in ACTION_MAPS[label]])
    assert M == (A.T).inv()
    assert abs(A.det()) == 2


@pytest.mark.parametrize("body", ["AS", "HA"])
@pytest.mark.parametrize("label", ["1:2", "1:3"])
def test_lindblad_levels_consistent(systems, body, label):
    s = systems[(body, label)]
    J0, I0, L0 = lindblad_levels(s.epi, s.model, label, 0.05)
    A = TRANSFORMS[label]
    G0 = np.linalg.solve(A.T, [J0, I0])[0]
    np.testing.assert_allclose(A.T @ [G0, L0], [J0, I0], rtol=1e-12)
    M = np.array([[float(v) for v in row] for row in ACTION_MAPS[label]])
    np.testing.assert_allclose(M @ [J0, I0], [G0, L0], rtol=1e-12)


@pytest.mark.parametrize("body", ["AS", "HA"])
def test_corotation_reduction_is_the_filtered_series(systems, body):
    s = systems[(body, "1:1")]
    e = 0.05
    h = reduce_corotation(s.epi, e, n_harmonics=100, mirror_theta=False)
    J0 = h.levels["J0"]
    series = s.epi.series.filter_resonant(-1, 0)
    x = np.array([-0.3, 0.0, 0.7]) * J0
    q = np.array([0.1, 1.3, 2.9])
    exact = series.evaluate(x, J0, q, 0.4) - series.evaluate(0.0, J0, 0.0, 0.4)
    reduced = h(x, q) - h(0.0, 0.0)
    np.testing.assert_allclose(reduced, exact, rtol=1e-10, atol=1e-12 * np.max(np.abs(exact)))


@pytest.mark.parametrize("body", ["AS", "HA"])
@pytest.mark.parametrize("label", ["1:2", "1:3"])
def test_lindblad_reduction_is_the_filtered_series(systems, body, label):
    s = systems[(body, label)]
    h = reduce_lindblad(s.epi, s.model, s.spec, 0.05, n_harmonics=100, mirror_theta=False)
    L0 = h.levels["L0"]
    A = TRANSFORMS[label]
    series = s.epi.series.filter_resonant(s.spec.m, s.spec.j)
    G0 = np.linalg.solve(A.T, [h.levels["J0"], h.levels["I0"]])[0]
    G = G0 + np.array([-0.1, 0.0, 0.2]) * h.levels["J0"] / A[0, 0]
    psi = np.array([0.3, 2.0, 4.0])
    J = A[0, 0] * G + A[1, 0] * L0
    I = A[0, 1] * G + A[1, 1] * L0
    # psi = A[0] . (phi, theta); take phi = 0
    theta = psi / A[0, 1]
    exact = series.evaluate(I, J, theta, 0.0)
    ref = series.evaluate(A[0, 1] * G0 + A[1, 1] * L0, A[0, 0] * G0 + A[1, 0] * L0, 0.0, 0.0)
    np.testing.assert_allclose(h(G, psi) - h(G0, 0.0), exact - ref, rtol=1e-9)


def test_mirroring_doubles_pure_harmonics(systems):
    s = systems[("HA", "1:1")]
    a = reduce_corotation(s.epi, 0.1, mirror_theta=True)
    b = reduce_corotation(s.epi, 0.1, mirror_theta=False)
    np.testing.assert_array_equal(a.normal, b.normal)
    for (ma, ca), (mb, cb) in zip(a.harmonics, b.harmonics):
        assert ma == mb
        np.testing.assert_allclose(ca, 2 * cb, rtol=1e-15)


@pytest.mark.parametrize("key", [(b, l) for b in ("AS", "HA") for l in LABELS])
def test_reduced_hamiltonian_symmetries(systems, key):
    h = systems[key].reduce(0.1)
    period = np.pi if key[1] == "1:1" else 2 * np.pi
    x = np.linspace(-1, 1, 5) * (abs(h.levels.get("L0", h.levels["J0"])) + 1)
    for q in (0.2, 1.1, -2.5):
        np.testing.assert_allclose(h(x, q + period), h(x, q), rtol=1e-9, atol=1e-20)
        np.testing.assert_allclose(h(x, -q), h(x, q), rtol=1e-12, atol=1e-20)
    assert h.normal[0] == 0.0


@given(st.floats(-2.0, 2.0), st.floats(-4.0, 4.0))
def test_reduced_derivatives(x, q):
    m = PotentialModel(preset("HA"), ell_max=3)
    h = _cached_reduced(m)
    scale = 1.0 + abs(x)
    hx, hq = h.gradient(x, q)
    d = 1e-6
    fx = (h(x + d, q) - h(x - d, q)) / (2 * d)
    fq = (h(x, q + d) - h(x, q - d)) / (2 * d)
    mag = np.max(np.abs(h.deltas[0])) * scale**4 + np.max(np.abs(h.alphas)) * scale
    assert hx == pytest.approx(fx, abs=1e-6 * mag)
    assert hq == pytest.approx(fq, abs=1e-6 * mag)
    vx, vq = h.gradient(np.array([x]), np.array([q]))
    assert (float(vx[0]), float(vq[0])) == pytest.approx((hx, hq), rel=1e-12, abs=1e-25)
    hxx, hxq, hqq = h.second_derivatives(x, q)
    assert hqq == pytest.approx((h.dq(x, q + d) - h.dq(x, q - d)) / (2 * d), abs=1e-6 * mag)
    assert hxq == pytest.approx((h.dx(x, q + d) - h.dx(x, q - d)) / (2 * d), abs=1e-6 * mag)


_CACHE = {}


def _cached_reduced(m):
    if "h" not in _CACHE:
        s = ResonantSystem(m, "1:2", rho_order=6)
        h = s.reduce(0.1)
        L0 = abs(h.levels["L0"])
        # rescale the action to order one for the difference quotients
        from ringres.resonance import ReducedHamiltonian

        sc = L0 ** np.arange(len(h.normal))
        _CACHE["h"] = ReducedHamiltonian(
            normal=h.normal * sc,
            harmonics=[(k, c * L0 ** np.arange(len(c))) for k, c in h.harmonics],
        )
    return _CACHE["h"]


def test_reduction_argument_checks(systems):
    s = systems[("AS", "1:2")]
    with pytest.raises(ValueError):
        s.reduce(0.0)
    with pytest.raises(ValueError):
        reduce_corotation(systems[("AS", "1:1")].epi, 1.0)
    spec = resonant_radius(s.model, 2, 5)
    with pytest.raises(ConfigurationError):
        reduce_lindblad(s.epi, s.model, spec, 0.1)

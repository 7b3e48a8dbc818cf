from math import factorial

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ringres.body import preset
from ringres.epicyclic import (
    ExpansionCenter,
    assemble,
    direct_hamiltonian,
    eccentricity_from_j,
    epicyclic_to_cartesian,
    initial_action,
    j_from_eccentricity,
    rho_polynomial,
    taylor_c,
    taylor_v,
    truncation_remainder,
)
from ringres.potential import PotentialModel
from ringres.series import COS, SIN


@pytest.fixture
def center(model):
    return ExpansionCenter.at(model, 1500.0)


def _mp_weights(model, p):
    return [mp.mpf(float(v)) for v in model.radial_weights(p)]


def test_axisymmetric_taylor_coefficients(model, center):
    mp.mp.dps = 50
    w = _mp_weights(model, 0)
    GM, r0, p, Om = (mp.mpf(v) for v in (model.GM, center.r_star, center.p_star, center.Omega_P))

    def H(I, rho):
        r = r0 + rho
        u = -GM * sum(w[l] * r ** -(2 * l + 1) for l in range(len(w)))
        return (I + p) ** 2 / (2 * r**2) - (I + p) * Om + u

    for i in range(3):
        for j in range(max(0, 3 - i), 11):
            oracle = mp.diff(H, (0, 0), (i, j)) / (factorial(i) * factorial(j))
            assert taylor_c(center, model, i, j) == pytest.approx(float(oracle), rel=1e-10)


def test_nonaxisymmetric_taylor_coefficients(model, center):
    mp.mp.dps = 50
    GM, r0 = mp.mpf(model.GM), mp.mpf(center.r_star)
    for i in range(1, model.ell_max + 1):
        w = _mp_weights(model, i)
        f = lambda rho: -GM * sum(w[l] * (r0 + rho) ** -(2 * l + 1) for l in range(i, len(w)))
        for j in range(0, 11):
            oracle = mp.diff(f, 0, j) / factorial(j)
            assert taylor_v(center, model, j, i) == pytest.approx(float(oracle), rel=1e-10)


def test_circular_orbit_identities(model, center):
    # the reference orbit is circular and its radial stiffness is kappa^2
    from ringres.epicyclic import _raw_coefficient

    k2 = center.kappa_star**2
    assert abs(_raw_coefficient(center, model, 0, 1)) < 1e-12 * abs(_raw_coefficient(center, model, 0, 2))
    assert _raw_coefficient(center, model, 0, 2) == pytest.approx(0.5 * k2, rel=1e-12)
    assert _raw_coefficient(center, model, 1, 0) == pytest.approx(center.n_star - center.Omega_P, rel=1e-12)


def test_linear_terms(model, center):
    epi = assemble(center, model)
    s = epi.series
    assert s.coefficient(0, 2) == pytest.approx(abs(center.kappa_star), rel=1e-12)
    assert s.coefficient(1, 0) == pytest.approx(center.n_star - center.Omega_P, rel=1e-12)
    assert epi.omega1 == abs(center.kappa_star)
    assert s.coefficient(0, 0) == 0.0
    assert epi.axisymmetric().select(lambda k: k[2] != 0) == type(s)()


def test_series_parity(model, center):
    # rho -> -rho with phi -> -phi: sine harmonics carry odd powers of sqrt(J)
    s = assemble(center, model).series
    for t in s:
        assert t.k_theta % 2 == 0
        assert (t.kind == SIN) == (t.j_half_pow % 2 == 1)
        assert t.i_pow <= 2 and t.j_half_pow <= center.rho_order
        assert t.k_phi <= t.j_half_pow


@given(st.floats(0.0, 0.05), st.floats(-3.2, 3.2), st.floats(0.0, 6.3), st.floats(-0.5, 0.5))
def test_series_matches_complete_hamiltonian(e, th, ph, di):
    m = PotentialModel(preset("HA"))
    c = ExpansionCenter.at(m, 1800.0)
    epi = _cached_assembly(m, c)
    J = j_from_eccentricity(c, e)
    I = di * c.p_star * 1e-3
    rho, p_rho = epicyclic_to_cartesian(c, J, ph)
    exact = direct_hamiltonian(c, m, p_rho, I, rho, th)
    approx = epi.evaluate(I, J, th, ph)
    scale = abs(c.kappa_star) * j_from_eccentricity(c, 0.05) + abs(c.n_star * c.p_star)
    assert approx == pytest.approx(exact, abs=1e-12 * scale)


_CACHE = {}


def _cached_assembly(m, c):
    key = (m.body.name, c.r_star)
    if key not in _CACHE:
        _CACHE[key] = assemble(c, m)
    return _CACHE[key]


def test_remainder_shrinks_with_order(as_model):
    vals = []
    for order in (4, 8, 12, 16):
        c = ExpansionCenter.at(as_model, 1124.59, rho_order=order)
        vals.append(truncation_remainder(c, as_model, 0.3, n_grid=12))
    assert all(b < a for a, b in zip(vals, vals[1:]))
    c = ExpansionCenter.at(as_model, 1124.59)
    assert truncation_remainder(c, as_model, 0.0) == 0.0
    assert truncation_remainder(c, as_model, 0.3, n_grid=8, method="orders") > 0


def test_action_conversions(center):
    for e in (0.0, 1e-3, 0.3):
        J = j_from_eccentricity(center, e)
        assert eccentricity_from_j(center, J) == pytest.approx(e, abs=1e-15)
    e = 0.01
    ratio = initial_action(center, e) / j_from_eccentricity(center, e)
    assert ratio == pytest.approx(center.n_star**2 / center.kappa_star**2 + 1, rel=1e-12)


def test_rho_polynomial_layout(model, center):
    poly = rho_polynomial(center, model)
    assert (0, 2, 0, 0, COS) not in poly
    assert (0, 1, 0, 0, COS) not in poly
    assert poly.coefficient(0, 0, 2, 0) == pytest.approx(taylor_v(center, model, 0, 1))


def test_argument_checks(model, center):
    with pytest.raises(ValueError):
        taylor_c(center, model, 3, 3)
    with pytest.raises(ValueError):
        taylor_c(center, model, 0, 2)
    with pytest.raises(ValueError):
        taylor_v(center, model, 0, model.ell_max + 1)
    with pytest.raises(ValueError):
        taylor_v(center, model, 17, 1)
    with pytest.raises(ValueError):
        j_from_eccentricity(center, 1.0)
    with pytest.raises(ValueError):
        eccentricity_from_j(center, -1.0)
    with pytest.raises(ValueError):
        truncation_remainder(center, model, 0.2, method="other")
    with pytest.raises(ValueError):
        ExpansionCenter(1000.0, 1e-3, 0.0, 1e-4)

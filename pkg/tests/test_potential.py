from math import pi

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ringres.body import BodyParams, preset
from ringres.errors import ConfigurationError, NonRealFrequencyError
from ringres.potential import (
    PotentialModel,
    angular_momentum,
    frequencies,
    squared_frequencies,
    u_axisymmetric,
    u_nonaxisymmetric,
)


def _mp_u0(model):
    w = [mp.mpf(float(v)) for v in model.radial_weights(0)]
    GM = mp.mpf(model.GM)
    return lambda r: -GM * sum(w[l] * r ** -(2 * l + 1) for l in range(len(w)))


def test_frequencies_from_finite_differences(model):
    mp.mp.dps = 40
    u0 = _mp_u0(model)
    n2 = lambda r: mp.diff(u0, r) / r
    for r in (1200.0, 1800.0, 3000.0):
        rr = mp.mpf(r)
        kap2 = mp.diff(lambda s: s**4 * n2(s), rr) / rr**3
        got_n2, got_k2 = squared_frequencies(model, r)
        assert got_n2 == pytest.approx(float(n2(rr)), rel=1e-12)
        assert got_k2 == pytest.approx(float(kap2), rel=1e-12)


def test_radial_derivatives(model):
    mp.mp.dps = 40
    u0 = _mp_u0(model)
    for k in range(5):
        oracle = float(mp.diff(u0, mp.mpf(1500), k))
        assert model.radial_derivative(1500.0, k) == pytest.approx(oracle, rel=1e-12)


def test_sphere_is_keplerian():
    m = PotentialModel(BodyParams(500.0, 500.0, 500.0, 1e21, 3600.0))
    r = np.array([800.0, 1500.0, 4000.0])
    n, k = frequencies(m, r)
    np.testing.assert_allclose(n, np.sqrt(m.GM / r**3), rtol=1e-15)
    np.testing.assert_allclose(k, n, rtol=1e-15)
    assert np.all(u_nonaxisymmetric(m, r, 0.3) == 0)
    np.testing.assert_allclose(u_axisymmetric(m, r), -m.GM / r, rtol=1e-15)


@given(st.floats(600.0, 5000.0), st.floats(-10.0, 10.0))
def test_nonaxisymmetric_part_is_pi_periodic_and_even(r, th):
    m = PotentialModel(preset("HA"))
    u = u_nonaxisymmetric(m, r, th)
    assert u_nonaxisymmetric(m, r, th + pi) == pytest.approx(u, rel=1e-9, abs=1e-14)
    assert u_nonaxisymmetric(m, r, -th) == pytest.approx(u, rel=1e-12, abs=1e-15)


def test_long_axis_is_deepest():
    m = PotentialModel(preset("HA"))
    assert u_nonaxisymmetric(m, 1500.0, 0.0) < u_nonaxisymmetric(m, 1500.0, pi / 2)


def test_ordering_of_frequencies(model):
    # an oblate-like axisymmetric part makes n exceed kappa
    n, k = frequencies(model, 1500.0)
    assert n > k > 0
    assert angular_momentum(model, 1500.0) == pytest.approx(n * 1500.0**2)


def test_array_and_scalar_agree(model):
    r = np.linspace(1000.0, 3000.0, 7)
    n, k = frequencies(model, r)
    for i, ri in enumerate(r):
        assert frequencies(model, float(ri)) == (n[i], k[i])


def test_frequency_failure_near_body():
    m = PotentialModel(preset("HA"), ell_max=8)
    with pytest.raises(NonRealFrequencyError):
        frequencies(m, 50.0)


def test_bad_inputs():
    with pytest.raises(ConfigurationError):
        PotentialModel(preset("AS"), ell_max=0)
    with pytest.raises(ConfigurationError):
        PotentialModel(preset("AS"), ell_max=9)
    m = PotentialModel(preset("AS"))
    with pytest.raises(ValueError):
        u_axisymmetric(m, -1.0)
    with pytest.raises(ValueError):
        squared_frequencies(m, 0.0)

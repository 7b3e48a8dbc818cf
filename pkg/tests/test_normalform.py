import numpy as np
import pytest

from ringres.body import BodyParams, preset
from ringres.epicyclic import ExpansionCenter, assemble
from ringres.normalform import (
    average_h0,
    coupling_from_frequencies,
    d0j_direct,
    kam_determinant,
    nondegeneracy_report,
)
from ringres.potential import PotentialModel


@pytest.fixture
def epi(model):
    return assemble(ExpansionCenter.at(model, 1600.0, rho_order=6), model)


def test_coupling_matches_frequencies(epi):
    c = epi.center
    nf = average_h0(epi)
    assert nf.A == pytest.approx(coupling_from_frequencies(c.n_star, c.kappa_star, c.r_star), rel=1e-12)


def test_quartic_coefficient(model, epi):
    nf = average_h0(epi, order=2)
    assert nf.d04 == pytest.approx(d0j_direct(epi.center, model, 4), rel=1e-12)
    assert nf.d03 == pytest.approx(d0j_direct(epi.center, model, 3), rel=1e-12)


def test_normal_form_is_phase_average(epi):
    # the retained monomials of the phi-averaged axisymmetric part
    nf = average_h0(epi, order=2)
    avg = epi.axisymmetric().average_phi()
    kept = avg.select(lambda k: (k[0], k[1]) in {(0, 2), (1, 0), (2, 0), (1, 2), (0, 4)})
    for J, I in ((1e-3, 0.5), (0.2, -3.0), (2.0, 10.0)):
        assert nf(J, I) == pytest.approx(kept.evaluate(I, J, 0.0, 0.0), rel=1e-12)


@pytest.mark.parametrize("order", [1, 2])
def test_determinant_is_hessian_determinant(epi, order):
    nf = average_h0(epi, order)
    assert kam_determinant(nf) == pytest.approx(np.linalg.det(nf.hessian()), rel=1e-9)
    # finite-difference Hessian of h0
    J0, I0, h = 0.3, 1.0, 1e-2
    f = nf
    hjj = (f(J0 + h, I0) - 2 * f(J0, I0) + f(J0 - h, I0)) / h**2
    hii = (f(J0, I0 + h) - 2 * f(J0, I0) + f(J0, I0 - h)) / h**2
    hji = (f(J0 + h, I0 + h) - f(J0 + h, I0 - h) - f(J0 - h, I0 + h) + f(J0 - h, I0 - h)) / (4 * h * h)
    np.testing.assert_allclose([[hjj, hji], [hji, hii]], nf.hessian(), rtol=1e-4, atol=1e-4 * abs(nf.A))


def test_report_all_non_degenerate(model):
    rows = nondegeneracy_report(model)
    assert len(rows) == 6
    assert {r["verdict"] for r in rows} == {"non-degenerate"}
    for r in rows:
        if r["order"] == 1:
            assert r["determinant"] == pytest.approx(-r["A"] ** 2)
            assert r["determinant"] < 0


def test_sphere_coupling():
    m = PotentialModel(BodyParams(500.0, 500.0, 500.0, 1e21, 3600.0))
    nf = average_h0(assemble(ExpansionCenter.at(m, 2000.0, rho_order=4), m))
    # n = kappa for a point mass, so A = 3 / r^2
    assert nf.A == pytest.approx(3.0 / 2000.0**2, rel=1e-12)


def test_order_check(epi):
    with pytest.raises(ValueError):
        average_h0(epi, order=3)

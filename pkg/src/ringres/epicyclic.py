"""
Epicyclic expansion of the particle Hamiltonian about a reference radius.

Around ``r_star`` the rotating-frame Hamiltonian is expanded in the radial
offset ``rho`` and the angular-momentum offset ``I``; the pair
``(rho, p_rho)`` is then replaced by the epicyclic action-angle variables
``(J, phi)``. The result is a :class:`~ringres.series.PoissonSeries` in
``(I, J, theta, phi)``.
"""

from dataclasses import dataclass
from math import comb

import numpy as np

from .potential import frequencies, u_axisymmetric, u_nonaxisymmetric
from .series import COS, PoissonSeries, Truncation, substitute_rho


@dataclass(frozen=True)
class ExpansionCenter:
    """
    Reference circular orbit.

    Attributes
    ----------
    r_star : float
        Radius, km.
    n_star, kappa_star : float
        Mean motion and epicyclic frequency at ``r_star``, rad/s.
    Omega_P : float
        Spin rate of the body, rad/s.
    rho_order : int
        Highest power of ``rho`` retained.
    """

    r_star: float
    n_star: float
    kappa_star: float
    Omega_P: float
    rho_order: int = 16

    def __post_init__(self):
        if self.kappa_star == 0:
            raise ValueError("kappa_star must be non-zero")

    @property
    def p_star(self):
        return self.n_star * self.r_star**2

    @classmethod
    def at(cls, model, r_star, rho_order=16):
        n, k = frequencies(model, r_star)
        return cls(float(r_star), float(n), float(k), model.Omega_P, rho_order)


def _binom_neg(m, j):
    """Generalized binomial ``C(-m, j)`` for positive integer ``m``."""
    return (-1) ** j * comb(m + j - 1, j)


def _raw_coefficient(center, model, i, j):
    # Taylor coefficient of I^i rho^j in (I+p)^2/(2(r+rho)^2) - (I+p) Omega + U_s(r+rho)
    r, p = center.r_star, center.p_star
    kin = {0: 0.5 * p * p, 1: p, 2: 0.5}.get(i, 0.0)
    out = kin * (j + 1) * (-1) ** j / r ** (j + 2)
    if i == 1 and j == 0:
        out -= center.Omega_P
    if i == 0:
        w = model.radial_weights(0)
        out -= model.GM * sum(
            w[l] * _binom_neg(2 * l + 1, j) * r ** (-(2 * l + 1 + j)) for l in range(model.ell_max + 1)
        )
    return out


def taylor_c(center, model, i, j):
    """
    Coefficient of ``I**i rho**j`` in the part of degree three and higher.

    Parameters
    ----------
    i : int
        Power of ``I`` (0, 1 or 2).
    j : int
        Power of ``rho``, ``j >= 3 - i``.
    """
    if not 0 <= i <= 2:
        raise ValueError("I-power must be 0, 1 or 2")
    if j < 3 - i or i + j > center.rho_order + 2:
        raise ValueError(f"rho-power {j} out of range for I-power {i}")
    return _raw_coefficient(center, model, i, j)


def taylor_v(center, model, j, i):
    """Coefficient of ``rho**j cos(2 i theta)`` of the non-axisymmetric potential."""
    if j < 0 or j > center.rho_order:
        raise ValueError(f"rho-power {j} out of range")
    if not 1 <= i <= model.ell_max:
        raise ValueError(f"harmonic {i} out of range")
    r = center.r_star
    w = model.radial_weights(i)
    return -model.GM * sum(
        w[l] * _binom_neg(2 * l + 1, j) * r ** (-(2 * l + 1 + j)) for l in range(i, model.ell_max + 1)
    )


@dataclass(frozen=True)
class EpicyclicHamiltonian:
    """
    Epicyclic Hamiltonian ``|kappa*| J + (n* - Omega_P) I + ...`` as a series.

    ``omega1`` and ``omega2`` duplicate the linear coefficients for
    convenience.
    """

    center: ExpansionCenter
    series: PoissonSeries
    ell_max: int

    @property
    def omega1(self):
        return abs(self.center.kappa_star)

    @property
    def omega2(self):
        return self.center.n_star - self.center.Omega_P

    def axisymmetric(self):
        return self.series.select(lambda k: k[2] == 0)

    def evaluate(self, I, J, theta, phi):
        return self.series.evaluate(I, J, theta, phi)


def rho_polynomial(center, model):
    """
    Hamiltonian beyond the harmonic-oscillator part, as a polynomial in rho.

    The ``j_half_pow`` slot of the returned series stores the power of rho.
    The terms ``p_rho^2/2 + kappa^2 rho^2/2`` and ``(n - Omega) I`` are
    excluded, as are constants.
    """
    N = center.rho_order
    terms = {}
    for i in range(3):
        for j in range(N + 1):
            if (i, j) in ((0, 0), (0, 1), (0, 2), (1, 0)):
                continue
            terms[(i, j, 0, 0, COS)] = _raw_coefficient(center, model, i, j)
    for i in range(1, model.ell_max + 1):
        for j in range(N + 1):
            terms[(0, j, 2 * i, 0, COS)] = taylor_v(center, model, j, i)
    return PoissonSeries(terms, Truncation(i_pow=2, j_half=N), drop_tol=0.0)


def assemble(center, model, drop_tol=0.0):
    """
    Full epicyclic Hamiltonian about ``center``.

    Constant terms are dropped. ``drop_tol`` is the relative pruning
    threshold of the resulting series; the default keeps every term because
    coefficients of different J-degree are not commensurable.
    """
    poly = rho_polynomial(center, model)
    s = substitute_rho(poly, center.kappa_star)
    lin = PoissonSeries(
        {(0, 2, 0, 0, COS): abs(center.kappa_star), (1, 0, 0, 0, COS): center.n_star - center.Omega_P},
        drop_tol=0.0,
    )
    s = s.add(lin)
    s = PoissonSeries._from_clean(dict(s.items()), s.truncation, drop_tol)
    return EpicyclicHamiltonian(center, s, model.ell_max)


def direct_hamiltonian(center, model, p_rho, I, rho, theta):
    """
    Untruncated rotating-frame Hamiltonian about ``center`` with the same
    constant removed as in :func:`assemble`.
    """
    r0, p, Om = center.r_star, center.p_star, center.Omega_P
    r = r0 + np.asarray(rho, dtype=float)
    H = 0.5 * np.asarray(p_rho) ** 2 + (I + p) ** 2 / (2 * r**2) - (I + p) * Om
    H = H + u_axisymmetric(model, r) + u_nonaxisymmetric(model, r, theta)
    const = p * p / (2 * r0**2) - p * Om + u_axisymmetric(model, r0)
    return H - const


def epicyclic_to_cartesian(center, J, phi):
    """``(rho, p_rho)`` of the epicyclic action-angle pair."""
    k = abs(center.kappa_star)
    return np.sqrt(2 * J / k) * np.sin(phi), np.sqrt(2 * k * J) * np.cos(phi)


def j_from_eccentricity(center, e):
    """Epicyclic action of an orbit of eccentricity e: ``|kappa| r^2 e^2 / 2``."""
    if not 0 <= e < 1:
        raise ValueError("eccentricity must lie in [0, 1)")
    return 0.5 * abs(center.kappa_star) * center.r_star**2 * e * e


def eccentricity_from_j(center, J):
    if J < 0:
        raise ValueError("J must be non-negative")
    return float(np.sqrt(2.0 * J / abs(center.kappa_star)) / center.r_star)


def initial_action(center, e):
    """
    Epicyclic action fixed from ``rho = e r*`` and ``p_rho = e r* n*``.

    Used to set the integral level of the resonant reductions. It differs
    from :func:`j_from_eccentricity` by the factor ``n*^2/kappa*^2 + 1``.
    """
    if not 0 <= e < 1:
        raise ValueError("eccentricity must lie in [0, 1)")
    k = abs(center.kappa_star)
    rho = e * center.r_star
    p_rho = center.r_star * e * center.n_star
    return p_rho**2 / (2 * k) + 0.5 * k * rho**2


def truncation_remainder(center, model, e_max, n_grid=24, method="direct", lower_order=None):
    """
    Largest truncation error of the series on the circle ``J = J(e_max)``.

    Parameters
    ----------
    method : {"direct", "orders"}
        ``"direct"`` compares the series with the untruncated Hamiltonian
        of :func:`direct_hamiltonian`. ``"orders"`` compares the series at
        ``center.rho_order`` with its own truncation at ``lower_order``
        (default ``rho_order - 2``), a proxy that needs no closed form.

    Returns
    -------
    float
        Maximum over an ``n_grid x 2 n_grid`` grid of ``(theta, phi)`` at
        ``I = 0``, in km^2/s^2.
    """
    if not 0 <= e_max < 1:
        raise ValueError("e_max must lie in [0, 1)")
    if method not in ("direct", "orders"):
        raise ValueError(f"unknown method {method!r}")
    if e_max == 0:
        return 0.0
    series = assemble(center, model).series
    J = j_from_eccentricity(center, e_max)
    th, ph = np.meshgrid(
        np.linspace(0, np.pi, n_grid, endpoint=False), np.linspace(0, 2 * np.pi, 2 * n_grid, endpoint=False)
    )
    approx = series.evaluate(0.0, J, th, ph)
    if method == "direct":
        rho, p_rho = epicyclic_to_cartesian(center, J, ph)
        exact = direct_hamiltonian(center, model, p_rho, 0.0, rho, th)
    else:
        lo = center.rho_order - 2 if lower_order is None else lower_order
        exact = series.truncate(Truncation(i_pow=2, j_half=lo)).evaluate(0.0, J, th, ph)
    return float(np.max(np.abs(approx - exact)))

"""
Averaged integrable part of the epicyclic Hamiltonian and its KAM
non-degeneracy.

Averaging the axisymmetric part over the epicyclic angle gives

    h0(J, I) = omega1 J + omega2 I + I**2 / (2 r*^2) + A I J [+ (3/8) d04 J**2]

whose Hessian determinant in ``(J, I)`` decides non-degeneracy.
"""

from dataclasses import dataclass

import numpy as np

from .epicyclic import ExpansionCenter, assemble, taylor_c
from .resonance import parse_label, resonant_radius
from .series import SIN

DEFAULT_FLOOR = 1e-30


@dataclass(frozen=True)
class NormalForm:
    """
    Coefficients of ``h0`` read off the averaged series.

    Attributes
    ----------
    omega1, omega2 : float
        ``|kappa*|`` and ``n* - Omega_P``, rad/s.
    A : float
        Coefficient of ``I J``.
    d04, d03 : float
        Coefficients of ``J**2 sin**4 phi`` and ``J**(3/2) sin**3 phi``.
    r_star : float
        Expansion radius, km.
    order : int
        1 keeps terms linear in J, 2 adds ``J**2``.
    """

    omega1: float
    omega2: float
    A: float
    d04: float
    d03: float
    r_star: float
    order: int

    def hessian(self):
        """Hessian of ``h0`` in ``(J, I)``."""
        hjj = 0.75 * self.d04 if self.order == 2 else 0.0
        return np.array([[hjj, self.A], [self.A, 1.0 / self.r_star**2]])

    def __call__(self, J, I):
        out = self.omega1 * J + self.omega2 * I + I * I / (2 * self.r_star**2) + self.A * I * J
        if self.order == 2:
            out = out + 0.375 * self.d04 * J * J
        return out


def average_h0(epi, order=1):
    """
    Normal form of an :class:`~ringres.epicyclic.EpicyclicHamiltonian`.

    The axisymmetric part is averaged over ``phi``; ``A`` and the ``J**2``
    coefficient are read from the averaged series, ``d03`` from the
    ``J**(3/2) sin(phi)`` term before averaging.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    c = epi.center
    avg = epi.axisymmetric().average_phi()
    A = avg.coefficient(1, 2)
    # <sin^4> = 3/8; sin^3 = (3/4) sin - (1/4) sin 3phi
    d04 = avg.coefficient(0, 4) / 0.375
    d03 = epi.axisymmetric().coefficient(0, 3, 0, 1, SIN) / 0.75
    return NormalForm(epi.omega1, epi.omega2, A, d04, d03, c.r_star, order)


def kam_determinant(nf):
    """``-A**2`` at order 1, ``3 d04 / (4 r*^2) - A**2`` at order 2."""
    if nf.order == 1:
        return -nf.A * nf.A
    return 0.75 * nf.d04 / nf.r_star**2 - nf.A * nf.A


def coupling_from_frequencies(n_star, kappa_star, r_star):
    """``A = 3 n* / (|kappa*| r*^2)`` without reference to any series."""
    return 3.0 * n_star / (abs(kappa_star) * r_star**2)


def d0j_direct(center, model, j):
    """``d_{0,j} = c_{0,j} (2/|kappa*|)^(j/2)`` straight from the Taylor coefficient."""
    return taylor_c(center, model, 0, j) * (2.0 / abs(center.kappa_star)) ** (j / 2)


def nondegeneracy_report(model, resonances=("1:1", "1:2", "1:3"), orders=(1, 2), floor=DEFAULT_FLOOR, rho_order=4):
    """
    Table of Hessian determinants at the resonant radii.

    ``rho_order`` only needs to reach the ``rho**4`` terms that build
    ``h0``.

    Returns
    -------
    list of dict
        Keys ``body, resonance, order, omega1, omega2, A, d04, determinant,
        verdict``; the verdict is ``"non-degenerate"`` iff
        ``|determinant| > floor``.
    """
    rows = []
    for label in resonances:
        p, q = parse_label(label)
        spec = resonant_radius(model, p, q)
        epi = assemble(ExpansionCenter.at(model, spec.r_res, rho_order), model)
        for order in orders:
            nf = average_h0(epi, order)
            det = kam_determinant(nf)
            rows.append(
                dict(
                    body=model.body.name,
                    resonance=label,
                    order=order,
                    omega1=nf.omega1,
                    omega2=nf.omega2,
                    A=nf.A,
                    d04=nf.d04,
                    determinant=det,
                    verdict="non-degenerate" if abs(det) > floor else "degenerate",
                )
            )
    return rows

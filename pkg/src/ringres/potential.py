"""
Equatorial gravitational potential of the ellipsoid and orbital frequencies.

The potential is a finite sum of power laws in ``r`` times ``cos(2 p theta)``;
every radial derivative is taken term by term.
"""

from dataclasses import dataclass, field

import numpy as np

from .body import legendre_even_zero, reference_radius, shape_parameters, stokes_coefficient
from .errors import ConfigurationError, NonRealFrequencyError

ELL_MAX_RANGE = (1, 8)


def falling(m, k):
    """Falling factorial ``m (m-1) ... (m-k+1)`` (real ``m``)."""
    out = 1.0
    for i in range(k):
        out *= m - i
    return out


@dataclass(frozen=True)
class PotentialModel:
    """
    Truncated equatorial potential of a body.

    Attributes
    ----------
    table : ndarray, shape (ell_max+1, ell_max+1)
        ``table[l, p] = C_{2l,2p} * P_{2l,2p}(0)``, zero for ``p > l``.
    """

    body: object
    ell_max: int = 5
    table: np.ndarray = field(init=False, repr=False)
    R: float = field(init=False)

    def __post_init__(self):
        lo, hi = ELL_MAX_RANGE
        if not lo <= self.ell_max <= hi:
            raise ConfigurationError(f"ell_max must lie in [{lo}, {hi}]")
        R = reference_radius(self.body)
        t = np.zeros((self.ell_max + 1, self.ell_max + 1))
        for l in range(self.ell_max + 1):
            for p in range(l + 1):
                t[l, p] = stokes_coefficient(self.body, l, p, R) * float(legendre_even_zero(l, p))
        t.setflags(write=False)
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "R", R)

    @property
    def shape(self):
        return shape_parameters(self.body)

    @property
    def GM(self):
        return self.body.GM

    @property
    def Omega_P(self):
        return self.body.Omega_P

    def radial_weights(self, p=0):
        """
        ``w[l]`` such that the ``cos(2 p theta)`` part is ``-GM sum_l w[l] r^-(2l+1)``.
        """
        ls = np.arange(self.ell_max + 1)
        return self.table[:, p] * self.R ** (2.0 * ls)

    def radial_derivative(self, r, k, p=0):
        """k-th r-derivative of the ``cos(2 p theta)`` coefficient of the potential."""
        _check_radius(r)
        w = self.radial_weights(p)
        return -self.GM * sum(
            w[l] * falling(-(2 * l + 1), k) * r ** (-(2 * l + 1) - k) for l in range(p, self.ell_max + 1)
        )


def _check_radius(r):
    if np.any(np.asarray(r) <= 0):
        raise ValueError("radius must be positive")


def u_axisymmetric(model, r):
    """Axisymmetric part of the potential, km^2/s^2."""
    _check_radius(r)
    r = np.asarray(r, dtype=float)
    x = (model.R / r) ** 2
    out = -model.GM / r * np.polynomial.polynomial.polyval(x, model.table[:, 0])
    return out if out.ndim else float(out)


def u_nonaxisymmetric(model, r, theta):
    """Non-axisymmetric part of the potential (pi-periodic in theta), km^2/s^2."""
    _check_radius(r)
    r, theta = np.broadcast_arrays(np.asarray(r, dtype=float), np.asarray(theta, dtype=float))
    x = (model.R / r) ** 2
    out = np.zeros(r.shape)
    for p in range(1, model.ell_max + 1):
        radial = np.polynomial.polynomial.polyval(x, model.table[:, p])
        out = out + np.cos(2 * p * theta) * radial
    out = -model.GM / r * out
    return out if out.ndim else float(out)


def squared_frequencies(model, r):
    """``(n^2, kappa^2)`` at radius r."""
    _check_radius(r)
    r = np.asarray(r, dtype=float)
    x = (model.R / r) ** 2
    ls = np.arange(model.ell_max + 1)
    base = model.GM / r**3
    t0 = model.table[:, 0]
    n2 = base * np.polynomial.polynomial.polyval(x, (2 * ls + 1) * t0)
    k2 = base * np.polynomial.polynomial.polyval(x, (2 * ls + 1) * (1 - 2 * ls) * t0)
    if n2.ndim == 0:
        return float(n2), float(k2)
    return n2, k2


def frequencies(model, r):
    """
    Mean motion and epicyclic frequency at radius r, rad/s.

    Raises
    ------
    NonRealFrequencyError
        If either squared frequency is not positive.
    """
    n2, k2 = squared_frequencies(model, r)
    if np.any(np.asarray(n2) <= 0) or np.any(np.asarray(k2) <= 0):
        raise NonRealFrequencyError(f"non-real frequency at r={r} km (too close to the body)")
    return np.sqrt(n2), np.sqrt(k2)


def angular_momentum(model, r):
    """Circular-orbit specific angular momentum ``n(r) r^2``, km^2/s."""
    n, _ = frequencies(model, r)
    return n * np.asarray(r, dtype=float) ** 2

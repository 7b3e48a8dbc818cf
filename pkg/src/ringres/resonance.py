"""
Resonant radii and the one-degree-of-freedom resonant Hamiltonians.

A ``p:q`` resonance is encoded by the integers ``m = -p`` and ``j = q - p``
of the condition ``j kappa(r) = m (n(r) - Omega_P)``; corotation is ``1:1``
(``j = 0``).
"""

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.optimize import brentq

from .epicyclic import ExpansionCenter, assemble, initial_action
from .errors import ConfigurationError, NoBracketError, NonRealFrequencyError
from .potential import frequencies, squared_frequencies
from .series import COS

#: harmonics kept by default, per resonance label
DEFAULT_HARMONICS = {"1:1": 5, "1:2": 5, "1:3": 4}

# angle/action change of variables, rows act on (phi, theta):
# psi = A[0] . (phi, theta), mu = A[1] . (phi, theta)
TRANSFORMS = {
    "1:2": np.array([[2, 2], [2, 1]]),
    "1:3": np.array([[4, 2], [1, 1]]),
}


@dataclass(frozen=True)
class ResonanceSpec:
    p: int
    q: int
    r_res: float
    r_kep: float
    n_star: float
    kappa_star: float

    @property
    def m(self):
        return -self.p

    @property
    def j(self):
        return self.q - self.p

    @property
    def label(self):
        return f"{self.p}:{self.q}"

    @property
    def is_corotation(self):
        return self.p == self.q


def parse_label(label):
    """``"1:2"`` -> ``(1, 2)``."""
    try:
        p, q = (int(s) for s in str(label).split(":"))
    except ValueError:
        raise ConfigurationError(f"bad resonance label {label!r}; expected 'p:q'") from None
    if p <= 0 or q <= 0:
        raise ConfigurationError("p and q must be positive")
    return p, q


def keplerian_radius(body, p, q):
    """
    Resonant radius from Kepler's third law with ``T_pq = (q/p) / Omega_P``.
    """
    if p <= 0 or q <= 0:
        raise ValueError("p and q must be positive")
    T = (q / p) / body.Omega_P
    return (body.GM * T * T) ** (1.0 / 3.0)


def resonance_residual(model, r, p, q):
    """``(p - q) kappa(r) - p (n(r) - Omega_P)``; NaN where frequencies are not real."""
    n2, k2 = squared_frequencies(model, r)
    n2, k2 = np.asarray(n2), np.asarray(k2)
    ok = (n2 > 0) & (k2 > 0)
    n = np.sqrt(np.where(ok, n2, np.nan))
    k = np.sqrt(np.where(ok, k2, np.nan))
    return (p - q) * k - p * (n - model.Omega_P)


def resonant_radius(model, p, q, window=(0.5, 2.0), samples=400):
    """
    Solve the resonance condition near the Keplerian radius.

    The window ``window * r_kep`` is sampled; the sign change nearest
    ``r_kep`` is refined with Brent's method.

    Raises
    ------
    NonRealFrequencyError
        If the frequencies are not real anywhere in the window.
    NoBracketError
        If the residual does not change sign in the window.
    """
    r_kep = keplerian_radius(model.body, p, q)
    rs = np.geomspace(window[0] * r_kep, window[1] * r_kep, samples)
    f = resonance_residual(model, rs, p, q)
    finite = np.isfinite(f)
    if not finite.any():
        raise NonRealFrequencyError("frequencies are not real anywhere in the search window")
    idx = np.flatnonzero(finite[:-1] & finite[1:] & (np.sign(f[:-1]) != np.sign(f[1:])))
    if idx.size == 0:
        raise NoBracketError(f"no sign change of the {p}:{q} residual in [{rs[0]:.1f}, {rs[-1]:.1f}] km")
    best = idx[np.argmin(np.abs(0.5 * (rs[idx] + rs[idx + 1]) - r_kep))]
    r = brentq(
        lambda x: float(resonance_residual(model, x, p, q)), rs[best], rs[best + 1], xtol=1e-13, rtol=4 * np.finfo(float).eps
    )
    n, k = frequencies(model, r)
    return ResonanceSpec(p, q, float(r), r_kep, float(n), float(k))


def radius_discrepancy(model, p, q):
    spec = resonant_radius(model, p, q)
    return abs(spec.r_kep - spec.r_res) / spec.r_kep


@dataclass
class ReducedHamiltonian:
    """
    One-degree-of-freedom resonant Hamiltonian

    ``H(x, q) = sum_k normal[k] x**k + sum_i delta_i(x) cos(mult_i q)``

    with ``x`` the action (``I`` for corotation, ``G`` otherwise) and ``q``
    the resonant angle (``theta`` or ``psi``).

    Attributes
    ----------
    normal : ndarray
        Ascending polynomial coefficients, ``normal[0] == 0``.
    harmonics : list of (int, ndarray)
        Angle multiplier and ascending polynomial coefficients of ``delta_i``.
    levels : dict
        Integral levels (``J0``; ``I0`` and ``L0`` for Lindblad cases).
    """

    normal: np.ndarray
    harmonics: list
    resonance: ResonanceSpec = None
    angle_name: str = "q"
    action_name: str = "x"
    e: float = None
    levels: dict = field(default_factory=dict)

    @property
    def alphas(self):
        """Normal-part coefficients of ``x**1, x**2, ...``."""
        return np.asarray(self.normal[1:])

    @property
    def deltas(self):
        return [c for _, c in self.harmonics]

    @cached_property
    def _tables(self):
        # multipliers and coefficient tables of delta_i and its derivatives
        m = np.array([mult for mult, _ in self.harmonics], dtype=float)
        deg = max([len(c) for _, c in self.harmonics] + [3])
        C = np.zeros((deg, len(m)))
        for k, (_, c) in enumerate(self.harmonics):
            C[: len(c), k] = c
        normal = np.zeros(max(len(self.normal), 3))
        normal[: len(self.normal)] = self.normal
        return m, C, P.polyder(C), P.polyder(C, 2), normal, P.polyder(normal), P.polyder(normal, 2)

    def _parts(self, x, q):
        m, C, dC, ddC, *_ = self._tables
        x, q = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(q, dtype=float))
        mq = np.multiply.outer(m, q)
        return x, m.reshape((-1,) + (1,) * q.ndim), np.cos(mq), np.sin(mq)

    def __call__(self, x, q):
        x, _, cos, _ = self._parts(x, q)
        m, C, *_, normal, _, _ = self._tables
        return P.polyval(x, normal) + (P.polyval(x, C) * cos).sum(axis=0)

    def dx(self, x, q):
        x, _, cos, _ = self._parts(x, q)
        _, _, dC, _, _, d1, _ = self._tables
        return P.polyval(x, d1) + (P.polyval(x, dC) * cos).sum(axis=0)

    def dq(self, x, q):
        x, m, _, sin = self._parts(x, q)
        C = self._tables[1]
        return -(m * P.polyval(x, C) * sin).sum(axis=0)

    def gradient(self, x, q):
        """``(H_x, H_q)``."""
        if np.ndim(x) == 0 and np.ndim(q) == 0:
            return self._scalar_gradient(float(x), float(q))
        x, m, cos, sin = self._parts(x, q)
        _, C, dC, _, _, d1, _ = self._tables
        hx = P.polyval(x, d1) + (P.polyval(x, dC) * cos).sum(axis=0)
        hq = -(m * P.polyval(x, C) * sin).sum(axis=0)
        return hx, hq

    @cached_property
    def _scalar_tables(self):
        m, C, dC, _, _, d1, _ = self._tables
        rows = [(float(m[k]), C[::-1, k].tolist(), dC[::-1, k].tolist()) for k in range(len(m))]
        return rows, d1[::-1].tolist()

    def _scalar_gradient(self, x, q):
        rows, d1 = self._scalar_tables
        hx = 0.0
        for a in d1:
            hx = hx * x + a
        hq = 0.0
        for mult, c, dc in rows:
            v = 0.0
            for a in c:
                v = v * x + a
            dv = 0.0
            for a in dc:
                dv = dv * x + a
            hx += dv * math.cos(mult * q)
            hq -= mult * v * math.sin(mult * q)
        return hx, hq

    def second_derivatives(self, x, q):
        """``(H_xx, H_xq, H_qq)``."""
        x, m, cos, sin = self._parts(x, q)
        _, C, dC, ddC, _, _, d2 = self._tables
        hxx = P.polyval(x, d2) + (P.polyval(x, ddC) * cos).sum(axis=0)
        hxq = -(m * P.polyval(x, dC) * sin).sum(axis=0)
        hqq = -(m * m * P.polyval(x, C) * cos).sum(axis=0)
        return hxx, hxq, hqq

    def vector_field(self, x, q):
        """``(dx/dt, dq/dt) = (-dH/dq, dH/dx)``."""
        hx, hq = self.gradient(x, q)
        return -hq, hx


def _poly_of_affine(i_pow, j_pow, ix, i0, jx, j0):
    # ascending coefficients of (ix x + i0)^i_pow (jx x + j0)^j_pow
    return P.polymul(P.polypow([i0, ix], i_pow), P.polypow([j0, jx], j_pow))


def _collect(series, angle_multiplier, ix, i0, jx, j0, n_harmonics, mirror_theta):
    """
    Reduce a resonant series to polynomials in the new action.

    ``angle_multiplier(k_theta, k_phi)`` maps a harmonic to its multiple of
    the resonant angle.
    """
    normal = np.zeros(1)
    harm = {}
    for (a, h, kt, kp, kind), c in series.items():
        if h % 2 and jx != 0:
            raise ValueError("half-integer J power in a term that depends on the reduced action")
        jpow = h // 2
        if h % 2:
            poly = c * P.polypow([i0, ix], a) * np.sqrt(j0) ** h
        else:
            poly = c * _poly_of_affine(a, jpow, ix, i0, jx, j0)
        if kt == 0 and kp == 0:
            normal = P.polyadd(normal, poly)
            continue
        if kind != COS:
            raise ValueError(f"unexpected sine harmonic ({kt}, {kp}) in resonant part")
        mult = angle_multiplier(kt, kp)
        if mult > n_harmonics:
            continue
        if mirror_theta and kp == 0:
            poly = 2.0 * poly
        harm[mult] = P.polyadd(harm.get(mult, np.zeros(1)), poly)
    normal = np.array(normal, dtype=float)
    normal[0] = 0.0
    return normal, harm


def reduce_corotation(epi, e, n_harmonics=None, mirror_theta=True, spec=None):
    """
    Corotation Hamiltonian ``H(I, theta)`` at the epicyclic level ``J0(e)``.

    Parameters
    ----------
    epi : EpicyclicHamiltonian
        Expansion about the corotation radius.
    e : float
        Eccentricity fixing ``J0``.
    mirror_theta : bool
        Count every pure ``cos(2 k theta)`` harmonic once for ``+2k`` and once
        for ``-2k``, as in the two-sided tabulation of the expansion. This
        doubles the non-axisymmetric forcing and is what the reference
        corotation coefficients and libration widths correspond to. Set to
        False for the one-sided (physical) Fourier coefficients.
    """
    if not 0 < e < 1:
        raise ValueError("eccentricity must lie in (0, 1)")
    n_harmonics = DEFAULT_HARMONICS["1:1"] if n_harmonics is None else n_harmonics
    J0 = initial_action(epi.center, e)
    s = epi.series.filter_resonant(-1, 0)
    normal, harm = _collect(s, lambda kt, kp: kt // 2, 1.0, 0.0, 0.0, J0, n_harmonics, mirror_theta)
    normal = normal[:3] if len(normal) > 3 else normal
    harmonics = [(2 * k, np.atleast_1d(harm[k])) for k in sorted(harm)]
    return ReducedHamiltonian(
        normal=normal,
        harmonics=harmonics,
        resonance=spec,
        angle_name="theta",
        action_name="I",
        e=e,
        levels={"J0": J0},
    )


def lindblad_levels(epi, model, label, e):
    """Integral levels ``(J0, I0, L0)`` of a Lindblad reduction at eccentricity e."""
    c = epi.center
    J0 = initial_action(c, e)
    r = c.r_star * (1.0 + e)
    n, _ = frequencies(model, r)
    I0 = float(n) * r * r - c.p_star
    A = TRANSFORMS[label]
    # new actions = A^-T (J, I)
    G0, L0 = np.linalg.solve(A.T, [J0, I0])
    return J0, I0, float(L0)


def reduce_lindblad(epi, model, spec, e, n_harmonics=None, mirror_theta=True):
    """
    ``1:2`` or ``1:3`` Hamiltonian ``H(G, psi)`` at the level ``L = L0(e)``.

    The resonant angle is ``psi = 2 theta + 2 j phi``; ``(J, I)`` are
    expressed through ``(G, L)`` by the transpose of the angle map.
    """
    label = spec.label
    if label not in TRANSFORMS:
        raise ConfigurationError(f"unsupported Lindblad resonance {label}; choose 1:2 or 1:3")
    if not 0 < e < 1:
        raise ValueError("eccentricity must lie in (0, 1)")
    n_harmonics = DEFAULT_HARMONICS[label] if n_harmonics is None else n_harmonics
    J0, I0, L0 = lindblad_levels(epi, model, label, e)
    A = TRANSFORMS[label]
    # (J, I) = A^T (G, L)
    jx, j0 = A[0, 0], A[1, 0] * L0
    ix, i0 = A[0, 1], A[1, 1] * L0
    s = epi.series.filter_resonant(spec.m, spec.j)
    normal, harm = _collect(s, lambda kt, kp: kt // 2, ix, i0, jx, j0, n_harmonics, mirror_theta)
    harmonics = [(k, np.atleast_1d(harm[k])) for k in sorted(harm)]
    return ReducedHamiltonian(
        normal=normal,
        harmonics=harmonics,
        resonance=spec,
        angle_name="psi",
        action_name="G",
        e=e,
        levels={"J0": J0, "I0": I0, "L0": L0},
    )


class ResonantSystem:
    """
    Epicyclic expansion at one resonance, reusable across eccentricities.
    """

    def __init__(self, model, label, rho_order=16, mirror_theta=True):
        self.model = model
        self.label = label
        p, q = parse_label(label)
        self.spec = resonant_radius(model, p, q)
        self.center = ExpansionCenter.at(model, self.spec.r_res, rho_order)
        self.epi = assemble(self.center, model)
        self.mirror_theta = mirror_theta

    def reduce(self, e, n_harmonics=None):
        if self.spec.is_corotation:
            return reduce_corotation(self.epi, e, n_harmonics, self.mirror_theta, spec=self.spec)
        return reduce_lindblad(self.epi, self.model, self.spec, e, n_harmonics, self.mirror_theta)

    __call__ = reduce

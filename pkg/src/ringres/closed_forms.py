"""
Closed-form low-order coefficients of the epicyclic Hamiltonian.

Written out by hand for the truncation ``ell_max = 3`` and ``rho**4``, and
used as an independent check on the series engine. Every expression is a
polynomial in ``I`` and ``J**(1/2)``, stored as ``{(i_pow, j_half): coeff}``.

``Q(l, p)`` below stands for ``P_{2l,2p}(0) C_{2l,2p} GM R**(2l)``.
"""

from math import sqrt

import numpy as np

from .epicyclic import taylor_c, taylor_v
from .series import COS, SIN

ELL_MAX = 3
RHO_ORDER = 4
S2 = sqrt(2.0)

# c_{0,j} = sum_l coef[l] Q(l, 0) / r**(2l+1+j)
_C0 = {
    3: (-1.0, 4.0, 25.0, 70.0),
    4: (1.5, -7.5, -57.5, -192.5),
}
# c_{1,j} = coef n / r**(j); c_{2,j} = coef / r**(j+2)
_C1 = {2: 3.0, 3: -4.0, 4: 5.0}
_C2 = {1: -1.0, 2: 1.5, 3: -2.0, 4: 2.5}

# V_{j,i} = sum_{l>=i} coef[l][j] Q(l, i) / r**(2l+1+j)
_V = {
    1: (-1.0, 3.0, -6.0, 10.0, -15.0),
    2: (-1.0, 5.0, -15.0, 35.0, -70.0),
    3: (-1.0, 7.0, -28.0, 84.0, -210.0),
}

# Non-axisymmetric harmonics cos/sin(2 i theta + k phi):
# {(k, kind): {l: {h: coef}}}, term coef Q(l, i) J**(h/2) / (|kappa|**(h/2) r**(2l+1+h))
_NONAXI = {
    (0, COS): {
        1: {4: -22.5, 2: -6.0, 0: -1.0},
        2: {4: -105.0, 2: -15.0, 0: -1.0},
        3: {4: -315.0, 2: -28.0, 0: -1.0},
    },
    (1, SIN): {
        1: {3: 15.0 / S2, 1: 3.0 / S2},
        2: {3: 105.0 / (2 * S2), 1: 5.0 / S2},
        3: {3: 63.0 * S2, 1: 7.0 / S2},
    },
    (2, COS): {
        1: {4: 15.0, 2: 3.0},
        2: {4: 70.0, 2: 7.5},
        3: {4: 210.0, 2: 14.0},
    },
    (3, SIN): {
        1: {3: -5.0 / S2},
        2: {3: -35.0 / (2 * S2)},
        3: {3: -21.0 * S2},
    },
    (4, COS): {
        1: {4: -3.75},
        2: {4: -17.5},
        3: {4: -52.5},
    },
}

# Axisymmetric harmonics cos/sin(k phi), potential part:
# {(k, kind): {l: coef}}, term coef Q(l, 0) J**(h/2) / (|kappa|**(h/2) r**(2l+1+h))
# with h = 3 for sines and 4 for cosines
_AXI_POT = {
    (1, SIN): (-3.0 / S2, 6.0 * S2, 75.0 / S2, 105.0 * S2),
    (2, COS): (-3.0, 15.0, 115.0, 385.0),
    (3, SIN): (1.0 / S2, -2.0 * S2, -25.0 / S2, -35.0 * S2),
    (4, COS): (0.75, -3.75, -28.75, -96.25),
}
# kinetic part: {(k, kind): [(coef, i_pow, h, n_pow, r_pow)]}
# term coef n**n_pow I**i_pow J**(h/2) / (|kappa|**(h/2) r**r_pow)
_AXI_KIN = {
    (1, SIN): [(-3.0 * S2, 2, 3, 0, 5), (-6.0 * S2, 1, 3, 1, 3), (-S2, 2, 1, 0, 3), (-2.0 * S2, 1, 1, 1, 1)],
    (2, COS): [(-5.0, 2, 4, 0, 6), (-10.0, 1, 4, 1, 4), (-1.5, 2, 2, 0, 4), (-3.0, 1, 2, 1, 2)],
    (3, SIN): [(S2, 2, 3, 0, 5), (2.0 * S2, 1, 3, 1, 3)],
    (4, COS): [(1.25, 2, 4, 0, 6), (2.5, 1, 4, 1, 4)],
}


def _check(center, model):
    if model.ell_max != ELL_MAX or center.rho_order != RHO_ORDER:
        raise ValueError(f"closed forms hold only for ell_max={ELL_MAX}, rho_order={RHO_ORDER}")


def _q(model, l, p):
    return model.table[l, p] * model.GM * model.R ** (2 * l)


def closed_c(center, model, i, j):
    """``c_{i,j}``, coefficient of ``I**i rho**j``."""
    _check(center, model)
    r, n = center.r_star, center.n_star
    if i == 0 and j in _C0:
        return sum(c * _q(model, l, 0) / r ** (2 * l + 1 + j) for l, c in enumerate(_C0[j]))
    if i == 1 and j in _C1:
        return _C1[j] * n / r**j
    if i == 2 and j in _C2:
        return _C2[j] / r ** (j + 2)
    raise ValueError(f"no closed form for c_({i},{j})")


def closed_v(center, model, j, i):
    """``V_{j,i}``, coefficient of ``rho**j cos(2 i theta)``."""
    _check(center, model)
    if i not in _V or not 0 <= j <= 4:
        raise ValueError(f"no closed form for V_({j},{i})")
    r = center.r_star
    return sum(_V[l][j] * _q(model, l, i) / r ** (2 * l + 1 + j) for l in range(i, ELL_MAX + 1))


def closed_harmonics(center, model):
    """
    Closed forms of the harmonics ``cos/sin(2 i theta + k phi)``.

    Returns
    -------
    dict
        ``{(2 i, k, kind): {(i_pow, j_half): coeff}}`` for ``|i| <= 3``,
        ``0 <= k <= 4``, omitting the angle-free part. Both ``2 i`` and
        ``-2 i`` are listed for ``i != 0``; with ``k = 0`` these are the
        same function and carry the same value.
    """
    _check(center, model)
    r, n, kap = center.r_star, center.n_star, abs(center.kappa_star)
    out = {}
    for i in range(1, ELL_MAX + 1):
        for (k, kind), blocks in _NONAXI.items():
            poly = {}
            for l, hs in blocks.items():
                if l < i:
                    continue
                for h, c in hs.items():
                    term = c * _q(model, l, i) / (kap ** (h / 2) * r ** (2 * l + 1 + h))
                    poly[(0, h)] = poly.get((0, h), 0.0) + term
            out[(2 * i, k, kind)] = poly
            out[(-2 * i, k, kind)] = dict(poly)
    for (k, kind), coefs in _AXI_POT.items():
        h = 3 if kind == SIN else 4
        poly = {(0, h): sum(c * _q(model, l, 0) / (kap ** (h / 2) * r ** (2 * l + 1 + h)) for l, c in enumerate(coefs))}
        for c, ip, h2, npow, rpow in _AXI_KIN[(k, kind)]:
            key = (ip, h2)
            poly[key] = poly.get(key, 0.0) + c * n**npow / (kap ** (h2 / 2) * r**rpow)
        out[(0, k, kind)] = poly
    return out


def _rel(a, b):
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


def compare(center, model, series):
    """
    Closed forms against the engine, one row per coefficient.

    Parameters
    ----------
    series : PoissonSeries
        Epicyclic Hamiltonian assembled about ``center``.

    Returns
    -------
    list of tuple
        ``(name, closed, engine, rel_err)``. Monomials present on one side
        only are reported against zero.
    """
    rows = []
    for i, j in [(0, 3), (0, 4)] + [(1, j) for j in _C1] + [(2, j) for j in _C2]:
        rows.append((f"c_{i}_{j}", closed_c(center, model, i, j), taylor_c(center, model, i, j)))
    for i in _V:
        for j in range(5):
            rows.append((f"V_{j}_{i}", closed_v(center, model, j, i), taylor_v(center, model, j, i)))
    for (kt, kp, kind), poly in closed_harmonics(center, model).items():
        h = series.harmonic(kt, kp, kind)
        engine = {(t[0], t[1]): c for t, c in h.items()}
        name = f"{'alpha' if kind == COS else 'beta'}_{kt}_{kp}"
        for key in sorted(set(poly) | set(engine)):
            rows.append((f"{name}[I^{key[0]} J^{key[1]}/2]", poly.get(key, 0.0), engine.get(key, 0.0)))
    return [(name, a, b, _rel(a, b)) for name, a, b in rows]


def max_relative_error(rows):
    return float(np.max([r[3] for r in rows]))

"""
Dynamics of the one-degree-of-freedom resonant Hamiltonians.

Equilibria are located by multi-start Newton iteration on the gradient,
classified by the sign of the Hessian determinant, and followed across
eccentricity to detect bifurcations. Orbits are integrated with a
fixed-step eighth-order Runge-Kutta scheme.
"""

from dataclasses import dataclass, field
from math import gcd

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.integrate._ivp import dop853_coefficients as _dop

from .errors import InapplicableError, IntegrationError, UnboundedError
from .resonance import TRANSFORMS

CENTRE = "centre"
SADDLE = "saddle"

# 12-stage, 8th-order explicit Runge-Kutta tableau of Dormand and Prince
_RK_A = _dop.A[: _dop.N_STAGES, : _dop.N_STAGES]
_RK_B = _dop.B
_RK_C = _dop.C[: _dop.N_STAGES]


@dataclass(frozen=True)
class EquilibriumPoint:
    """
    Fixed point of a reduced Hamiltonian.

    Attributes
    ----------
    angle : float
        Resonant angle in ``[0, 2 pi)``, rad.
    action : float
        Action, km^2/s.
    kind : str
        ``"centre"`` if ``hessian_det > 0``, otherwise ``"saddle"``.
    hessian_det : float
        ``H_xx H_qq - H_xq**2``.
    degenerate : bool
        The determinant is negligible compared with its terms.
    """

    angle: float
    action: float
    kind: str
    hessian_det: float
    degenerate: bool = False


@dataclass(frozen=True)
class LibrationMeasure:
    pendulum_semi_amplitude: float
    separatrix_amplitude: float
    centre: EquilibriumPoint


@dataclass(frozen=True)
class BifurcationEvent:
    """
    Change in the equilibrium structure between two eccentricities.

    ``angle_branch`` is the symmetry angle of a pitchfork or the angle of
    the new (or vanishing) pair of a saddle-node. ``bracket`` holds the
    two eccentricities that straddle the change.
    """

    e_crit: float
    angle_branch: float
    kind: str
    direction: str
    bracket: tuple = field(default=(np.nan, np.nan), compare=False)


@dataclass
class Trajectory:
    t: np.ndarray
    action: np.ndarray
    angle: np.ndarray
    energy: np.ndarray
    drift: float


# ---------------------------------------------------------------------------
# symmetry helpers


def angle_period(h):
    """Smallest period of ``h`` in its angle."""
    mults = [m for m, c in h.harmonics if np.any(c)]
    if not mults:
        return 2 * np.pi
    g = 0
    for m in mults:
        g = gcd(g, int(m))
    return 2 * np.pi / g


def _fold(q, period):
    # representative of the mirror class {q, -q} modulo the period, in [0, period/2]
    q = np.mod(q, period)
    return np.minimum(q, period - q)


# ---------------------------------------------------------------------------
# windows


def action_window(h, e_cap=0.5, span=3.0):
    """
    Action interval searched for equilibria.

    Corotation: ``I_c +- span * Delta I`` with ``I_c`` the root of the
    normal part and ``Delta I`` the separatrix half-width estimate.
    Lindblad cases: all ``G`` whose epicyclic action satisfies
    ``|J| <= |kappa*| r*^2 e_cap^2 / 2``. Polynomial roots farther out are
    artefacts of truncating the series.
    """
    spec = h.resonance
    if h.angle_name == "theta":
        a1, a2 = (list(h.normal[1:3]) + [0.0, 0.0])[:2]
        ic = -a1 / (2 * a2) if a2 else 0.0
        qq = np.linspace(0, np.pi, 721)
        v = sum(np.atleast_1d(c)[0] * np.cos(m * qq) for m, c in h.harmonics) if h.harmonics else np.zeros(1)
        spread = float(np.ptp(v))
        width = np.sqrt(2 * spread / abs(a2)) if a2 and spread > 0 else max(1.0, abs(ic))
        return ic - span * width, ic + span * width
    if spec is None or spec.label not in TRANSFORMS:
        raise InapplicableError("action window needs a corotation, 1:2 or 1:3 Hamiltonian")
    A = TRANSFORMS[spec.label]
    L0 = h.levels["L0"]
    jcap = 0.5 * abs(spec.kappa_star) * spec.r_res**2 * e_cap**2
    # J = A[0,0] G + A[1,0] L0
    lo = (-jcap - A[1, 0] * L0) / A[0, 0]
    hi = (jcap - A[1, 0] * L0) / A[0, 0]
    return float(min(lo, hi)), float(max(lo, hi))


# ---------------------------------------------------------------------------
# equilibria


def _scales(h, x, q):
    # sums of the magnitudes of the individual terms of H_x and H_q
    m, C, dC, _, _, d1, _ = h._tables
    ax = np.abs(x)
    sx = P.polyval(ax, np.abs(d1)) + P.polyval(ax, np.abs(dC)).sum(axis=0)
    sq = (m.reshape((-1,) + (1,) * ax.ndim) * P.polyval(ax, np.abs(C))).sum(axis=0)
    return sx, sq


def classify(h, action, angle, rel_floor=1e-14):
    """
    Kind of an equilibrium from the Hessian determinant.

    Returns
    -------
    kind : str
    det : float
    degenerate : bool
        ``|det|`` is below ``rel_floor`` times the size of its two products.
    """
    hxx, hxq, hqq = h.second_derivatives(action, angle)
    det = float(hxx * hqq - hxq * hxq)
    size = abs(hxx * hqq) + hxq * hxq
    degenerate = size == 0 or abs(det) <= rel_floor * size
    return (CENTRE if det > 0 else SADDLE), det, bool(degenerate)


def _newton(h, x, q, lo, hi, max_iter, tol):
    width = hi - lo
    mid = 0.5 * (lo + hi)
    x, q = x.copy(), q.copy()
    active = np.ones(x.shape, dtype=bool)
    lost = np.zeros(x.shape, dtype=bool)
    for _ in range(max_iter):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        xa, qa = x[idx], q[idx]
        gx = h.dx(xa, qa)
        gq = h.dq(xa, qa)
        hxx, hxq, hqq = h.second_derivatives(xa, qa)
        det = hxx * hqq - hxq * hxq
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            dx = -(hqq * gx - hxq * gq) / det
            dq = -(-hxq * gx + hxx * gq) / det
        bad = ~np.isfinite(dx) | ~np.isfinite(dq)
        dx = np.where(bad, 0.0, dx)
        dq = np.where(bad, 0.0, dq)
        # damping: cap the step in both coordinates
        s = np.maximum(1.0, np.maximum(np.abs(dx) / (0.25 * width), np.abs(dq) / 0.5))
        x[idx] = xa + dx / s
        q[idx] = qa + dq / s
        done = (np.abs(dx) <= 1e-14 * width) & (np.abs(dq) <= 1e-14)
        gone = bad | (np.abs(x[idx] - mid) > 10 * width)
        lost[idx[gone]] = True
        active[idx[done | gone]] = False
    gx = h.dx(x, q)
    gq = h.dq(x, q)
    sx, sq = _scales(h, x, q)
    ok = (np.abs(gx) <= tol * np.maximum(sx, 1e-300)) & (np.abs(gq) <= tol * np.maximum(sq, 1e-300))
    ok &= np.isfinite(x) & np.isfinite(q) & ~lost
    return x, q, ok


def find_equilibria(h, window=None, n_grid=64, tol=1e-10, dedup=1e-8, max_iter=80):
    """
    All equilibria of ``h`` in an action window.

    Parameters
    ----------
    h : ReducedHamiltonian
    window : (float, float), optional
        Action interval; :func:`action_window` by default.
    n_grid : int
        Seeds per axis of the uniform angle x action grid. Angles 0 and pi
        are always seeded.
    tol : float
        Gradient tolerance relative to the size of the gradient terms.
    dedup : float
        Merge radius in ``(angle, action / window width)``.

    Returns
    -------
    list of EquilibriumPoint
        Sorted by angle, then action. Empty if nothing converged.
    """
    lo, hi = action_window(h) if window is None else window
    width = hi - lo
    angles = np.unique(np.concatenate([np.linspace(0, 2 * np.pi, n_grid, endpoint=False), [0.0, np.pi]]))
    actions = np.linspace(lo, hi, n_grid)
    Q, X = np.meshgrid(angles, actions)
    x, q, ok = _newton(h, X.ravel(), Q.ravel(), lo, hi, max_iter, tol)
    margin = 0.05 * width
    ok &= (x >= lo - margin) & (x <= hi + margin)
    x, q = x[ok], np.mod(q[ok], 2 * np.pi)
    # snap to symmetry lines where the angle is already there to rounding
    for ref in (0.0, np.pi, 2 * np.pi):
        q = np.where(np.abs(q - ref) < 1e-12, ref % (2 * np.pi), q)
    order = np.lexsort((x, q))
    points = []
    for xi, qi in zip(x[order], q[order]):
        dup = False
        for p in points:
            dq = abs((qi - p[1] + np.pi) % (2 * np.pi) - np.pi)
            if dq <= dedup and abs(xi - p[0]) <= dedup * width:
                dup = True
                break
        if not dup:
            points.append((xi, qi))
    out = []
    for xi, qi in points:
        kind, det, degen = classify(h, xi, qi)
        out.append(EquilibriumPoint(float(qi), float(xi), kind, det, degen))
    out.sort(key=lambda p: (p.angle, p.action))
    return out


# ---------------------------------------------------------------------------
# amplitudes


def pendulum_amplitude(h):
    """
    Libration semi-amplitude ``sqrt(-2 alpha_3 / alpha_2)`` of the corotation
    pendulum model, in km^2/s.

    Raises
    ------
    InapplicableError
        For a non-corotation Hamiltonian, or unless ``alpha_2 > 0`` and
        ``alpha_3 < 0``.
    """
    if h.angle_name != "theta" or len(h.normal) < 3 or not h.harmonics:
        raise InapplicableError("pendulum formula applies to the corotation Hamiltonian only")
    a2 = h.normal[2]
    a3 = np.atleast_1d(h.harmonics[0][1])[0]
    if not (a2 > 0 and a3 < 0):
        raise InapplicableError(f"pendulum formula needs alpha_2 > 0 and alpha_3 < 0 (got {a2:.3e}, {a3:.3e})")
    return float(np.sqrt(-2.0 * a3 / a2))


def _line_poly(h, angle):
    # H(x, angle) as an ascending polynomial in x
    c = np.array(h.normal, dtype=float)
    for m, d in h.harmonics:
        c = P.polyadd(c, np.asarray(d) * np.cos(m * angle))
    return c


def _island_width(h, centre, energy):
    c = _line_poly(h, centre.angle)
    c = P.polysub(c, [energy])
    roots = np.roots(c[::-1])
    tol = 1e-7 * np.maximum(1.0, np.abs(roots))
    real = np.sort(roots[np.abs(roots.imag) <= tol].real)
    below = real[real < centre.action]
    above = real[real > centre.action]
    if below.size == 0 or above.size == 0:
        return None
    return below[-1], above[0]


def separatrix_amplitude(h, centre, equilibria=None):
    """
    Action extent of the island around ``centre`` bounded by the
    separatrix through a saddle.

    Along the centre's angle line the level ``H = E_s`` of the saddle is
    solved for the nearest action roots on either side of the centre.
    Among the saddles the one whose energy is nearest to the centre's on
    the side towards which the island grows is used.

    Returns
    -------
    float
        Semi-amplitude (centre to separatrix) for corotation, full width
        for the Lindblad cases.

    Raises
    ------
    UnboundedError
        If no saddle bounds the centre.
    """
    if equilibria is None:
        equilibria = find_equilibria(h)
    hxx, _, _ = h.second_derivatives(centre.action, centre.angle)
    Ec = float(h(centre.action, centre.angle))
    sign = 1.0 if hxx > 0 else -1.0  # island energies grow away from a minimum
    best = None
    for s in equilibria:
        if s.kind != SADDLE:
            continue
        Es = float(h(s.action, s.angle))
        gap = sign * (Es - Ec)
        if gap <= 0:
            continue
        w = _island_width(h, centre, Es)
        if w is None:
            continue
        if best is None or gap < best[0]:
            best = (gap, w)
    if best is None:
        raise UnboundedError("no saddle bounds the island of the given centre")
    lo, hi = best[1]
    if h.angle_name == "theta":
        return float(0.5 * (hi - lo))
    return float(hi - lo)


def libration(h, equilibria=None):
    """Pendulum and separatrix amplitudes about the corotation centre at theta = 0."""
    equilibria = find_equilibria(h) if equilibria is None else equilibria
    centres = [p for p in equilibria if p.kind == CENTRE]
    if not centres:
        raise UnboundedError("no centre found")
    centre = min(centres, key=lambda p: min(p.angle, 2 * np.pi - p.angle))
    return LibrationMeasure(pendulum_amplitude(h), separatrix_amplitude(h, centre, equilibria), centre)


# ---------------------------------------------------------------------------
# integration


def _energy_scale(h, x, q):
    s = sum(np.abs(c * x**k) for k, c in enumerate(h.normal))
    for m, c in h.harmonics:
        s = s + np.abs(P.polyval(x, c))
    return s


def integrate(h, state0, t_span, dt, max_drift=1e-8, n_out=None):
    """
    Fixed-step eighth-order integration of Hamilton's equations.

    ``d action/dt = -dH/d angle`` and ``d angle/dt = dH/d action``.

    Parameters
    ----------
    state0 : (float, float) or (array, array)
        Initial ``(action, angle)``; arrays integrate several orbits at once.
    t_span : (float, float)
        Start and end time in s. Integration runs backwards if
        ``t_span[1] < t_span[0]``.
    dt : float
        Positive step size; the last step is shortened to land on
        ``t_span[1]``.
    max_drift : float
        Largest tolerated relative energy error.
    n_out : int, optional
        Number of stored samples (default: every step).

    Raises
    ------
    IntegrationError
        If the energy drift exceeds ``max_drift``.
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    t0, t1 = map(float, t_span)
    x = np.array(state0[0], dtype=float)
    q = np.array(state0[1], dtype=float)
    n_steps = int(np.ceil(abs(t1 - t0) / dt - 1e-12))
    n_steps = max(n_steps, 1)
    step = (t1 - t0) / n_steps
    keep = n_steps + 1 if n_out is None else max(2, int(n_out))
    save_at = set(np.unique(np.round(np.linspace(0, n_steps, keep)).astype(int)).tolist())
    E0 = h(x, q)
    scale = np.maximum(_energy_scale(h, x, q), np.finfo(float).tiny)
    ts, xs, qs = [t0], [x.copy()], [q.copy()]
    kx = [None] * len(_RK_B)
    kq = [None] * len(_RK_B)
    for n in range(1, n_steps + 1):
        for s in range(len(_RK_B)):
            xi, qi = x, q
            for r in range(s):
                a = _RK_A[s, r]
                if a:
                    xi = xi + step * a * kx[r]
                    qi = qi + step * a * kq[r]
            kx[s], kq[s] = h.vector_field(xi, qi)
        x = x + step * sum(b * k for b, k in zip(_RK_B, kx))
        q = q + step * sum(b * k for b, k in zip(_RK_B, kq))
        if n in save_at:
            ts.append(t0 + n * step)
            xs.append(x.copy())
            qs.append(q.copy())
    xs, qs = np.array(xs), np.array(qs)
    E = h(xs, qs)
    drift = float(np.max(np.abs(E - E0) / scale))
    if not drift <= max_drift:
        raise IntegrationError(f"relative energy drift {drift:.2e} exceeds {max_drift:.0e}; reduce dt")
    return Trajectory(np.array(ts), xs, qs, E, drift)


def libration_period(h, centre):
    """Small-oscillation period about a centre, s."""
    hxx, hxq, hqq = h.second_derivatives(centre.action, centre.angle)
    det = hxx * hqq - hxq * hxq
    if det <= 0:
        raise InapplicableError("not a centre")
    return float(2 * np.pi / np.sqrt(det))


# ---------------------------------------------------------------------------
# phase portraits


def portrait(h, n_angle=181, n_action=181, window=None, equilibria=None):
    """
    Energy on a regular (angle, action) grid and separatrix samples.

    Returns
    -------
    angle, action, energy : ndarray
        Grids of shape ``(n_action, n_angle)``.
    separatrix : ndarray, shape (k, 3)
        Rows ``(angle, action, energy)`` on the level sets of the saddles.
    """
    lo, hi = action_window(h) if window is None else window
    equilibria = find_equilibria(h, (lo, hi)) if equilibria is None else equilibria
    qq = np.linspace(0, 2 * np.pi, n_angle)
    xx = np.linspace(lo, hi, n_action)
    Q, X = np.meshgrid(qq, xx)
    E = h(X, Q)
    rows = []
    levels = sorted({round(float(h(s.action, s.angle)), 300) for s in equilibria if s.kind == SADDLE})
    for Es in levels:
        for qi in np.linspace(0, 2 * np.pi, 4 * n_angle):
            c = P.polysub(_line_poly(h, qi), [Es])
            r = np.roots(c[::-1])
            r = r[np.abs(r.imag) <= 1e-7 * np.maximum(1.0, np.abs(r))].real
            for xi in np.sort(r[(r >= lo) & (r <= hi)]):
                rows.append((qi, xi, Es))
    return Q, X, E, np.array(rows).reshape(-1, 3)


# ---------------------------------------------------------------------------
# bifurcations


def _signature(h, window, n_grid):
    """Equilibria reduced to mirror classes: {(class, kind): count} and their angles."""
    T = angle_period(h)
    pts = find_equilibria(h, window, n_grid=n_grid)
    seen = []
    for p in pts:
        a = float(_fold(p.angle, T))
        if a < 1e-9:
            cls = "axis0"
        elif abs(a - T / 2) < 1e-9:
            cls = "axis1"
        else:
            cls = "off"
        key = (cls, p.kind, round(a, 6), round(p.action, 8))
        if any(k[:2] == key[:2] and abs(k[2] - key[2]) < 1e-6 and abs(k[3] - key[3]) <= 1e-6 * (1 + abs(key[3])) for k in seen):
            continue
        seen.append(key)
    counts = {}
    angles = {}
    for cls, kind, a, _ in seen:
        counts[(cls, kind)] = counts.get((cls, kind), 0) + 1
        angles.setdefault((cls, kind), []).append(a)
    return counts, angles, T, pts


def _classify_event(before, after, T):
    c0, a0 = before
    c1, a1 = after

    def diff(cls, kind):
        return c1.get((cls, kind), 0) - c0.get((cls, kind), 0)

    d_off = diff("off", CENTRE) + diff("off", SADDLE)
    for cls, ang in (("axis0", 0.0), ("axis1", T / 2)):
        dc, ds = diff(cls, CENTRE), diff(cls, SADDLE)
        if dc == -ds and dc != 0:
            return "pitchfork", ang, "stability-exchange"
        if dc + ds != 0:
            kind = "saddle-node"
            return kind, ang, "creation" if dc + ds > 0 else "annihilation"
    if d_off:
        src = a1 if d_off > 0 else a0
        new = [a for k, v in src.items() if k[0] == "off" for a in v]
        old = [a for k, v in (a0 if d_off > 0 else a1).items() if k[0] == "off" for a in v]
        cand = [a for a in new if all(abs(a - b) > 1e-3 for b in old)] or new
        return "saddle-node", float(np.mean(cand)) if cand else np.nan, "creation" if d_off > 0 else "annihilation"
    return "saddle-node", np.nan, "stability-exchange"


def bifurcation_scan(builder, e_range=(1e-3, 0.5), n_steps=500, n_grid=32, window=None, de_min=1e-4, diagram=False):
    """
    Changes of the equilibrium structure of ``builder(e)`` over an e-grid.

    At every grid point the equilibria are collected into mirror classes
    (on either symmetry line, or an off-axis pair) with their stability.
    Wherever the counts differ between neighbours the change is located by
    bisection to ``de_min`` and classified: a stability flip on a symmetry
    line is a pitchfork, the appearance or disappearance of a
    centre-saddle pair is a saddle-node.

    Parameters
    ----------
    builder : callable
        ``e -> ReducedHamiltonian``.
    window : callable or tuple, optional
        Action window, either fixed or ``h -> (lo, hi)``.
    diagram : bool
        Also return the equilibria found on the e-grid.

    Returns
    -------
    list of BifurcationEvent
        Or ``(events, rows)`` with ``diagram=True``, rows being
        ``(e, angle, action, kind)``.
    """
    e_lo, e_hi = e_range
    if not (0 < e_lo < e_hi < 1):
        raise ValueError("e_range must satisfy 0 < e_lo < e_hi < 1")
    if n_steps < 2:
        raise ValueError("n_steps must be at least 2")

    def sig(e):
        h = builder(e)
        w = window(h) if callable(window) else (window if window is not None else action_window(h))
        return _signature(h, w, n_grid)

    es = np.linspace(e_lo, e_hi, n_steps)
    sigs = [sig(e) for e in es]
    events = []
    for k in range(n_steps - 1):
        left, right = sigs[k], sigs[k + 1]
        a, b = es[k], es[k + 1]
        while left[0] != right[0]:
            # first change inside (a, b]
            lo_e, hi_e, s_hi = a, b, right
            while hi_e - lo_e > de_min:
                mid = 0.5 * (lo_e + hi_e)
                s_mid = sig(mid)
                if s_mid[0] == left[0]:
                    lo_e = mid
                else:
                    hi_e, s_hi = mid, s_mid
            kind, ang, direction = _classify_event(left[:2], s_hi[:2], left[2])
            events.append(BifurcationEvent(0.5 * (lo_e + hi_e), ang, kind, direction, (lo_e, hi_e)))
            if hi_e >= b:
                break
            a, left = hi_e, s_hi
    if diagram:
        rows = [(float(e), p.angle, p.action, p.kind) for e, s in zip(es, sigs) for p in s[3]]
        return events, rows
    return events

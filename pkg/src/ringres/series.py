"""
Truncated Poisson series in one pair of actions and two angles.

A term has the form::

    coeff * I**i_pow * J**(j_half_pow / 2) * trig(k_theta * theta + k_phi * phi)

with ``trig`` either cosine or sine. Half-integer powers of ``J`` are stored
as integer twice-powers so that keys stay exact. A series is a mapping from
keys ``(i_pow, j_half_pow, k_theta, k_phi, kind)`` to float coefficients, kept
in a canonical harmonic form (``k_theta >= 0``, and ``k_phi >= 0`` when
``k_theta == 0``).
"""

import csv
import io
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .errors import TruncationOverflowError

COS = "cos"
SIN = "sin"

#: default relative pruning threshold
DROP_TOL = 1e-18

CSV_COLUMNS = ("coeff", "i_pow", "j_half_pow", "k_theta", "k_phi", "kind")


@dataclass(frozen=True)
class Term:
    """Single monomial-times-harmonic of a :class:`PoissonSeries`."""

    coeff: float
    i_pow: int
    j_half_pow: int
    k_theta: int
    k_phi: int
    kind: str = COS

    @property
    def key(self):
        return (self.i_pow, self.j_half_pow, self.k_theta, self.k_phi, self.kind)


@dataclass(frozen=True)
class Truncation:
    """
    Degree and harmonic bounds of a series. ``None`` means unbounded.

    Parameters
    ----------
    i_pow : int or None
        Largest power of ``I`` kept.
    j_half : int or None
        Largest twice-power of ``J`` kept (16 keeps up to ``J**8``).
    k_theta, k_phi : int or None
        Largest ``|k_theta|`` and ``|k_phi|`` kept.
    """

    i_pow: int | None = 2
    j_half: int | None = None
    k_theta: int | None = None
    k_phi: int | None = None

    def admits(self, i_pow, j_half_pow, k_theta, k_phi):
        return (
            (self.i_pow is None or i_pow <= self.i_pow)
            and (self.j_half is None or j_half_pow <= self.j_half)
            and (self.k_theta is None or abs(k_theta) <= self.k_theta)
            and (self.k_phi is None or abs(k_phi) <= self.k_phi)
        )

    def meet(self, other):
        """Tighter of two truncations, field by field."""

        def low(x, y):
            if x is None:
                return y
            if y is None:
                return x
            return min(x, y)

        return Truncation(
            low(self.i_pow, other.i_pow),
            low(self.j_half, other.j_half),
            low(self.k_theta, other.k_theta),
            low(self.k_phi, other.k_phi),
        )


UNBOUNDED = Truncation(None, None, None, None)


def canonical_key(i_pow, j_half_pow, k_theta, k_phi, kind):
    """
    Canonical key and sign factor for a harmonic.

    Returns ``(key, sign)`` where ``sign`` multiplies the coefficient, or
    ``(None, 0)`` for the identically zero ``sin(0)``.
    """
    sign = 1
    if k_theta < 0 or (k_theta == 0 and k_phi < 0):
        k_theta, k_phi = -k_theta, -k_phi
        if kind == SIN:
            sign = -1
    if kind == SIN and k_theta == 0 and k_phi == 0:
        return None, 0
    return (i_pow, j_half_pow, k_theta, k_phi, kind), sign


class PoissonSeries:
    """
    Immutable truncated Poisson series.

    Parameters
    ----------
    terms : mapping or iterable, optional
        Either a ``{key: coeff}`` mapping or an iterable of :class:`Term`.
        Keys need not be canonical; they are folded on construction.
    truncation : Truncation, optional
        Degree and harmonic bounds applied to every term.
    drop_tol : float
        Terms whose magnitude is below ``drop_tol`` times the largest
        magnitude are pruned.
    """

    __slots__ = ("_terms", "truncation", "drop_tol")

    def __init__(self, terms=None, truncation=UNBOUNDED, drop_tol=DROP_TOL):
        self.truncation = truncation
        self.drop_tol = drop_tol
        acc = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, dict) else ((t.key, t.coeff) for t in terms)
            for raw_key, c in items:
                if not truncation.admits(*raw_key[:4]):
                    continue
                key, sign = canonical_key(*raw_key)
                if key is None:
                    continue
                acc[key] = acc.get(key, 0.0) + sign * float(c)
        self._terms = self._prune(acc)

    def _prune(self, acc):
        for c in acc.values():
            if not np.isfinite(c):
                raise ValueError("non-finite coefficient in series")
        if not acc:
            return {}
        big = max(abs(c) for c in acc.values())
        floor = self.drop_tol * big
        return {k: acc[k] for k in sorted(acc) if abs(acc[k]) > floor}

    @classmethod
    def _from_clean(cls, terms, truncation, drop_tol):
        # terms already canonical and admitted
        out = cls.__new__(cls)
        out.truncation = truncation
        out.drop_tol = drop_tol
        out._terms = out._prune(terms)
        return out

    @classmethod
    def constant(cls, value, truncation=UNBOUNDED):
        return cls({(0, 0, 0, 0, COS): value}, truncation)

    @classmethod
    def monomial(cls, coeff, i_pow=0, j_half_pow=0, k_theta=0, k_phi=0, kind=COS, truncation=UNBOUNDED):
        return cls({(i_pow, j_half_pow, k_theta, k_phi, kind): coeff}, truncation)

    # -- container protocol -------------------------------------------------

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        for key, c in self._terms.items():
            yield Term(c, *key)

    def __contains__(self, key):
        return key in self._terms

    def items(self):
        return self._terms.items()

    def coefficient(self, i_pow=0, j_half_pow=0, k_theta=0, k_phi=0, kind=COS):
        """Coefficient of one (canonicalized) key, 0 if absent."""
        key, sign = canonical_key(i_pow, j_half_pow, k_theta, k_phi, kind)
        if key is None:
            return 0.0
        return sign * self._terms.get(key, 0.0)

    def harmonic(self, k_theta, k_phi, kind=COS):
        """
        Sub-series holding the monomials that multiply one harmonic.

        The harmonic is given in any (possibly non-canonical) form; the
        returned series carries the sign appropriate to that form.
        """
        key, sign = canonical_key(0, 0, k_theta, k_phi, kind)
        if key is None:
            return PoissonSeries(truncation=self.truncation)
        _, _, kt, kp, kd = key
        terms = {k: sign * c for k, c in self._terms.items() if k[2:] == (kt, kp, kd)}
        return PoissonSeries._from_clean(terms, self.truncation, 0.0)

    def __repr__(self):
        return f"PoissonSeries({len(self)} terms)"

    def __eq__(self, other):
        if not isinstance(other, PoissonSeries):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def allclose(self, other, rtol=1e-12, atol=0.0):
        keys = set(self._terms) | set(other._terms)
        scale = max([abs(c) for c in self._terms.values()] + [abs(c) for c in other._terms.values()] + [0.0])
        for k in keys:
            a = self._terms.get(k, 0.0)
            b = other._terms.get(k, 0.0)
            if abs(a - b) > atol + rtol * scale:
                return False
        return True

    # -- algebra ------------------------------------------------------------

    def add(self, other):
        trunc = self.truncation.meet(other.truncation)
        acc = {k: c for k, c in self._terms.items() if trunc.admits(*k[:4])}
        for k, c in other._terms.items():
            if trunc.admits(*k[:4]):
                acc[k] = acc.get(k, 0.0) + c
        return PoissonSeries._from_clean(acc, trunc, min(self.drop_tol, other.drop_tol))

    def scale(self, c):
        c = float(c)
        return PoissonSeries._from_clean({k: c * v for k, v in self._terms.items()}, self.truncation, self.drop_tol)

    def mul(self, other):
        """
        Product with trigonometric linearization and truncation.
        """
        trunc = self.truncation.meet(other.truncation)
        acc = {}
        for (a1, h1, t1, p1, k1), c1 in self._terms.items():
            for (a2, h2, t2, p2, k2), c2 in other._terms.items():
                a, h = a1 + a2, h1 + h2
                if (trunc.i_pow is not None and a > trunc.i_pow) or (trunc.j_half is not None and h > trunc.j_half):
                    continue
                c = 0.5 * c1 * c2
                for kt, kp, kind, s in _linearize(t1, p1, k1, t2, p2, k2):
                    if not trunc.admits(a, h, kt, kp):
                        continue
                    key, sign = canonical_key(a, h, kt, kp, kind)
                    if key is None:
                        continue
                    acc[key] = acc.get(key, 0.0) + sign * s * c
        return PoissonSeries._from_clean(acc, trunc, min(self.drop_tol, other.drop_tol))

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = PoissonSeries.constant(other)
        return self.add(other)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1.0)

    def __sub__(self, other):
        return self.add(-other)

    def __mul__(self, other):
        if isinstance(other, PoissonSeries):
            return self.mul(other)
        return self.scale(other)

    __rmul__ = __mul__

    def truncate(self, truncation):
        trunc = self.truncation.meet(truncation)
        return PoissonSeries._from_clean(
            {k: c for k, c in self._terms.items() if trunc.admits(*k[:4])}, trunc, self.drop_tol
        )

    def select(self, predicate):
        """Sub-series of the terms whose key satisfies ``predicate(key)``."""
        return PoissonSeries._from_clean(
            {k: c for k, c in self._terms.items() if predicate(k)}, self.truncation, self.drop_tol
        )

    def average_phi(self):
        return self.select(lambda k: k[3] == 0)

    def average_theta(self):
        return self.select(lambda k: k[2] == 0)

    def filter_resonant(self, m, j):
        """
        Keep the angle-free terms and the harmonics of ``-m*theta + j*phi``.

        A harmonic ``(k_theta, k_phi)`` is kept when it is parallel to
        ``(-m, j)``, i.e. ``k_theta * j + k_phi * m == 0``.
        """
        if m == 0 and j == 0:
            raise ValueError("resonance (m, j) = (0, 0) is undefined")
        return self.select(lambda k: k[2] * j + k[3] * m == 0)

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, I, J, theta, phi):
        """
        Numerical value at ``(I, J, theta, phi)``; arguments broadcast.
        """
        I, J, theta, phi = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (I, J, theta, phi)))
        if np.any(J < 0):
            raise ValueError("J must be non-negative")
        sq = np.sqrt(J)
        out = np.zeros(I.shape)
        for (a, h, kt, kp, kind), c in self._terms.items():
            ang = kt * theta + kp * phi
            trig = np.cos(ang) if kind == COS else np.sin(ang)
            out = out + c * I**a * sq**h * trig
        return out if out.ndim else float(out)

    def gradient(self, I, J, theta, phi):
        """
        Partial derivatives ``(dI, dJ, dtheta, dphi)`` at a point with ``J > 0``.
        """
        sq = np.sqrt(J)
        dI = dJ = dth = dph = 0.0
        for (a, h, kt, kp, kind), c in self._terms.items():
            ang = kt * theta + kp * phi
            if kind == COS:
                tr, dtr = np.cos(ang), -np.sin(ang)
            else:
                tr, dtr = np.sin(ang), np.cos(ang)
            mon = I**a * sq**h
            if a:
                dI = dI + c * a * I ** (a - 1) * sq**h * tr
            if h:
                dJ = dJ + c * 0.5 * h * I**a * sq ** (h - 2) * tr
            dth = dth + c * mon * kt * dtr
            dph = dph + c * mon * kp * dtr
        return dI, dJ, dth, dph

    def to_polynomial(self, k_theta=0, k_phi=0, kind=COS):
        """
        Coefficients of one harmonic as a dict ``{(i_pow, j_half_pow): coeff}``.
        """
        sub = self.harmonic(k_theta, k_phi, kind)
        return {(k[0], k[1]): c for k, c in sub.items()}

    # -- serialization ------------------------------------------------------

    def to_csv(self, stream=None):
        """Write the series in the ``coeff,i_pow,j_half_pow,k_theta,k_phi,kind`` schema."""
        own = stream is None
        if own:
            stream = io.StringIO()
        w = csv.writer(stream, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for (a, h, kt, kp, kind), c in self._terms.items():
            w.writerow([repr(c), a, h, kt, kp, kind])
        if own:
            return stream.getvalue()
        return None

    @classmethod
    def from_csv(cls, text_or_stream, truncation=UNBOUNDED):
        stream = io.StringIO(text_or_stream) if isinstance(text_or_stream, str) else text_or_stream
        reader = csv.DictReader(stream)
        if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
            raise ValueError(f"expected columns {CSV_COLUMNS}, got {reader.fieldnames}")
        terms = {}
        for row in reader:
            key = (int(row["i_pow"]), int(row["j_half_pow"]), int(row["k_theta"]), int(row["k_phi"]), row["kind"])
            if key[4] not in (COS, SIN):
                raise ValueError(f"unknown trig kind {key[4]!r}")
            terms[key] = terms.get(key, 0.0) + float(row["coeff"])
        return cls(terms, truncation, drop_tol=0.0)


def _linearize(t1, p1, k1, t2, p2, k2):
    """
    Product-to-sum for two harmonics, without the common factor 1/2.

    Yields ``(k_theta, k_phi, kind, sign)``.
    """
    dt, dp = t1 - t2, p1 - p2
    st, sp = t1 + t2, p1 + p2
    if k1 == COS and k2 == COS:
        return ((dt, dp, COS, 1.0), (st, sp, COS, 1.0))
    if k1 == SIN and k2 == SIN:
        return ((dt, dp, COS, 1.0), (st, sp, COS, -1.0))
    if k1 == SIN:
        # sin A cos B
        return ((st, sp, SIN, 1.0), (dt, dp, SIN, 1.0))
    # cos A sin B = sin(A+B)/2 - sin(A-B)/2
    return ((st, sp, SIN, 1.0), (dt, dp, SIN, -1.0))


MAX_SIN_POWER = 16


@lru_cache(maxsize=None)
def _sin_power_terms(j):
    # sin^j x = (2i)^-j sum_k C(j,k) (-1)^k e^{i(j-2k)x}, folded to real harmonics
    terms = {}
    scale = 2.0**-j
    for k in range(j + 1):
        m = j - 2 * k
        if m < 0:
            continue
        w = comb(j, k) * (-1) ** k * scale
        if m > 0:
            w *= 2.0
        if j % 2 == 0:
            # (i)^-j = (-1)^(j/2), real part -> cosine
            terms[(0, 0, 0, m, COS)] = w * (-1) ** (j // 2)
        else:
            # (i)^-j = (-1)^((j+1)/2) i, imaginary part -> sine
            terms[(0, 0, 0, m, SIN)] = w * (-1) ** ((j - 1) // 2)
    return tuple(terms.items())


def power_sin_phi(j, max_power=MAX_SIN_POWER):
    """
    Exact finite Fourier expansion of ``sin(phi)**j``.
    """
    if j < 0:
        raise ValueError("power must be non-negative")
    if j > max_power:
        raise TruncationOverflowError(f"sin^{j} exceeds configured maximum {max_power}")
    return PoissonSeries(dict(_sin_power_terms(j)), drop_tol=0.0)


def substitute_rho(rho_poly, kappa_star, truncation=None):
    """
    Replace powers of the radial offset by epicyclic action-angle variables.

    ``rho_poly`` is a series whose ``j_half_pow`` slot holds the power of
    ``rho`` (and whose ``k_phi`` are zero); each ``rho**j`` becomes
    ``(2 J / |kappa_star|)**(j/2) * sin(phi)**j`` which lands naturally on
    ``j_half_pow = j``.

    Raises
    ------
    TruncationOverflowError
        If a power of ``rho`` would exceed the J-degree bound.
    """
    trunc = rho_poly.truncation if truncation is None else truncation
    k = abs(kappa_star)
    if k == 0:
        raise ValueError("kappa_star must be non-zero")
    acc = {}
    for (a, jr, kt, kp, kind), c in rho_poly.items():
        if kp != 0:
            raise ValueError("rho polynomial must not depend on phi")
        if trunc.j_half is not None and jr > trunc.j_half:
            raise TruncationOverflowError(f"rho^{jr} exceeds J-degree bound {trunc.j_half}")
        factor = c * (2.0 / k) ** (0.5 * jr)
        for (_, _, _, m, skind), w in _sin_power_terms(jr):
            for kt2, kp2, kind2, s in _linearize(kt, 0, kind, 0, m, skind):
                if not trunc.admits(a, jr, kt2, kp2):
                    continue
                key, sign = canonical_key(a, jr, kt2, kp2, kind2)
                if key is None:
                    continue
                acc[key] = acc.get(key, 0.0) + 0.5 * sign * s * factor * w
    return PoissonSeries._from_clean(acc, trunc, rho_poly.drop_tol)

"""
Homogeneous triaxial ellipsoid: physical parameters and shape constants.

Units are km, kg and s throughout.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, floor, pi, sqrt
from pathlib import Path

from .errors import ConfigurationError

#: gravitational constant in km^3 kg^-1 s^-2 (CODATA 2018)
GRAV_CONSTANT = 6.6743e-20


@dataclass(frozen=True)
class BodyParams:
    """
    Rotating homogeneous ellipsoid.

    Parameters
    ----------
    a, b, c : float
        Semi-axes in km, ``a >= b >= c > 0``.
    M_P : float
        Mass in kg.
    T_rot : float
        Rotation period in s.
    name : str
        Label used in reports.
    G : float
        Gravitational constant in km^3 kg^-1 s^-2.
    """

    a: float
    b: float
    c: float
    M_P: float
    T_rot: float
    name: str = "body"
    G: float = field(default=GRAV_CONSTANT, repr=False)

    def __post_init__(self):
        if not (self.a >= self.b >= self.c > 0):
            raise ConfigurationError(f"semi-axes must satisfy a >= b >= c > 0, got {self.a}, {self.b}, {self.c}")
        if not self.M_P > 0:
            raise ConfigurationError("mass must be positive")
        if not self.T_rot > 0:
            raise ConfigurationError("rotation period must be positive")

    @property
    def GM(self):
        """Gravitational parameter, km^3/s^2."""
        return self.G * self.M_P

    @property
    def Omega_P(self):
        """Spin rate, rad/s."""
        return 2.0 * pi / self.T_rot

    @classmethod
    def from_hours(cls, a, b, c, M_P, T_rot_h, name="body", G=GRAV_CONSTANT):
        return cls(a, b, c, M_P, T_rot_h * 3600.0, name=name, G=G)


@dataclass(frozen=True)
class ShapeConstants:
    R: float
    Ob: float
    El: float


PRESETS = {
    "AS": dict(a=1000.0, b=980.0, c=960.0, M_P=1e21, T_rot_h=8.0),
    "HA": dict(a=1000.0, b=650.0, c=400.0, M_P=1e21, T_rot_h=8.0),
}

FILE_KEYS = ("a_km", "b_km", "c_km", "mass_kg", "rotation_period_h")


def preset(name, G=GRAV_CONSTANT):
    """Bundled almost-spherical ("AS") or highly aspherical ("HA") body."""
    try:
        p = PRESETS[name.upper()]
    except KeyError:
        raise ConfigurationError(f"unknown body preset {name!r}; choose from {sorted(PRESETS)}") from None
    return BodyParams.from_hours(p["a"], p["b"], p["c"], p["M_P"], p["T_rot_h"], name=name.upper(), G=G)


def parse_body_text(text, name="body", G=GRAV_CONSTANT):
    """
    Parse a flat ``key = value`` body definition.

    Blank lines and ``#`` comments are ignored; ``:`` is accepted in place
    of ``=``. Required keys are ``a_km, b_km, c_km, mass_kg,
    rotation_period_h``.
    """
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        sep = "=" if "=" in line else ":"
        if sep not in line:
            raise ConfigurationError(f"line {lineno}: expected 'key = value'")
        key, val = (s.strip() for s in line.split(sep, 1))
        if key not in FILE_KEYS:
            raise ConfigurationError(f"line {lineno}: unknown key {key!r}")
        try:
            values[key] = float(val)
        except ValueError:
            raise ConfigurationError(f"line {lineno}: {key} is not a number") from None
    missing = [k for k in FILE_KEYS if k not in values]
    if missing:
        raise ConfigurationError(f"missing keys: {', '.join(missing)}")
    return BodyParams.from_hours(
        values["a_km"], values["b_km"], values["c_km"], values["mass_kg"], values["rotation_period_h"], name=name, G=G
    )


def load_body(spec, G=GRAV_CONSTANT):
    """Preset name or path to a body file."""
    if spec.upper() in PRESETS:
        return preset(spec, G=G)
    path = Path(spec)
    if not path.is_file():
        raise ConfigurationError(f"{spec!r} is neither a preset nor a readable file")
    return parse_body_text(path.read_text(), name=path.stem, G=G)


def body_to_text(body):
    return (
        f"a_km = {body.a!r}\nb_km = {body.b!r}\nc_km = {body.c!r}\n"
        f"mass_kg = {body.M_P!r}\nrotation_period_h = {body.T_rot / 3600.0!r}\n"
    )


def reference_radius(body):
    """Reference length R with 3/R^2 = 1/a^2 + 1/b^2 + 1/c^2, in km."""
    return sqrt(3.0 / (body.a**-2 + body.b**-2 + body.c**-2))


def shape_parameters(body, round_R=False):
    """
    Oblateness and elongation of the body.

    Parameters
    ----------
    round_R : bool or {"floor", "nearest"}
        Reduce the reference radius to whole km before use. ``True`` and
        ``"floor"`` drop the fraction, which is how the reference shape
        constants of the bundled presets were obtained; ``"nearest"``
        rounds half away from zero.
    """
    R = reference_radius(body)
    if round_R is True or round_R == "floor":
        R = float(floor(R))
    elif round_R == "nearest":
        R = float(floor(R + 0.5))
    elif round_R:
        raise ValueError(f"unknown round_R mode {round_R!r}")
    a2, b2, c2 = body.a**2, body.b**2, body.c**2
    return ShapeConstants(R=R, Ob=(a2 + b2 - 2.0 * c2) / (4.0 * R * R), El=(a2 - b2) / (2.0 * R * R))


def legendre_even_zero(ell, p):
    """
    Exact value of ``P_{2 ell, 2 p}(0)`` as a Fraction.

    >>> legendre_even_zero(1, 1)
    Fraction(3, 1)
    """
    if not 0 <= p <= ell:
        raise ValueError(f"need 0 <= p <= ell, got ell={ell}, p={p}")
    num = (-1) ** (ell - p) * factorial(2 * ell + 2 * p)
    den = 2 ** (2 * ell) * factorial(ell + p) * factorial(ell - p)
    return Fraction(num, den)


def stokes_coefficient(body, ell, p, R=None):
    """
    Dimensionless coefficient ``C_{2 ell, 2 p}`` of the ellipsoid.

    Factorial ratios are formed exactly before conversion to float.
    ``R`` defaults to the full-precision reference radius.
    """
    if not 0 <= p <= ell:
        raise ValueError(f"need 0 <= p <= ell, got ell={ell}, p={p}")
    if R is None:
        R = reference_radius(body)
    u = body.a**2 - body.b**2
    v = body.c**2 - 0.5 * (body.a**2 + body.b**2)
    total = 0.0
    for k in range((ell - p) // 2 + 1):
        w = Fraction(1, 16**k * factorial(ell - p - 2 * k) * factorial(p + k) * factorial(k))
        total += float(w) * u ** (p + 2 * k) * v ** (ell - p - 2 * k)
    pref = Fraction(
        3 * factorial(ell) * factorial(2 * ell - 2 * p) * (1 if p == 0 else 2),
        2 ** (2 * p) * (2 * ell + 3) * factorial(2 * ell + 1),
    )
    return float(pref) * total / R ** (2 * ell)

"""
Reference values for the two bundled bodies, used by ``reproduce-paper``.

Every record carries a tolerance and a comparison mode:

* ``abs``: ``|computed - expected| <= tol``
* ``rel``: ``|computed - expected| <= tol * |expected|``

Tabulated coefficients are given to two significant figures.
"""

VERSION = "1"

RADII = {
    ("AS", "1:1"): 1124.5,
    ("AS", "1:2"): 1776.57,
    ("AS", "1:3"): 2327.16,
    ("HA", "1:1"): 1176.82,
    ("HA", "1:2"): 1771.35,
    ("HA", "1:3"): 2316.93,
}

SHAPE = {
    # (R rounded, Ob, El)
    "AS": (979.0, 0.030570, 0.020659),
    "HA": (558.0, 0.885218, 0.927371),
}

COROTATION_ALPHAS = {
    "AS": (6.6e-10, 3.9e-7, -5.6e-4, -5.5e-6, -8.0e-8, -1.3e-9, -2.6e-11),
    "HA": (8.6e-10, 3.6e-7, -8.4e-3, -1.1e-3, -2.3e-4, -5.1e-5, -1.0e-5),
}

LINDBLAD_ALPHAS = {
    ("AS", "1:2"): (-2.0e-6, 7.2e-6, 1.1e-7, 1.5e-9, 2.0e-11, 2.6e-13, 3.3e-15, 4.2e-17, 3.0e-19, 7.2e-22),
    ("HA", "1:2"): (-1.8e-6, 7.3e-6, 1.1e-7, 1.4e-9, 1.5e-11, 1.1e-13, -9.6e-16, -7.2e-17, 4.1e-19, 9.7e-22),
    ("AS", "1:3"): (2.7e-6, 1.1e-5, 3.1e-7, 7.7e-9, 1.7e-10, 4.0e-12, 9.0e-14, 1.9e-15, 1.5e-17, 3.6e-20),
    ("HA", "1:3"): (2.6e-6, 1.1e-5, 3.1e-7, 7.5e-9, 1.6e-10, 3.5e-12, 6.5e-14, 9.9e-16, 1.8e-17, 4.2e-20),
}

# ascending coefficients G^0 .. G^8 of delta_1 ..
LINDBLAD_DELTAS = {
    ("AS", "1:2"): (
        (-2.1e-7, 1.2e-6, 3.6e-8, 7.6e-10, 1.3e-11, 2.2e-13, 3.5e-15, 5.3e-17, 8.0e-19),
        (-4.8e-12, 5.6e-11, -1.6e-10, -8.8e-12, -2.8e-13, -7.3e-15, -1.6e-16, -3.3e-18, -6.5e-20),
        (-1.8e-16, 3.2e-15, -1.8e-14, 3.5e-14, 2.7e-15, 1.2e-16, 4.1e-18, 1.1e-19, 3.0e-21),
        (-8.8e-21, 2.0e-19, -1.8e-18, 6.9e-18, -9.8e-18, -1.0e-18, -5.6e-20, -2.3e-21, -8.3e-23),
        (-4.6e-25, 1.3e-23, -1.6e-22, 9.3e-22, -2.6e-21, 2.9e-21, 3.7e-22, 2.5e-23, 1.3e-24),
    ),
    ("HA", "1:2"): (
        (-3.4e-6, 2.2e-5, 8.0e-7, 2.1e-8, 5.4e-10, 1.3e-11, 3.3e-13, 8.0e-15, 2.0e-16),
        (-1.2e-9, 1.6e-8, -5.1e-8, -3.3e-9, -1.3e-10, -4.5e-12, -1.3e-13, -3.7e-15, -1.0e-16),
        (-6.8e-13, 1.3e-11, -8.5e-11, 1.8e-10, 1.6e-11, 8.6e-13, 3.4e-14, 1.1e-15, 3.6e-17),
        (-4.2e-16, 1.1e-14, -1.0e-13, 4.5e-13, -7.0e-13, -7.9e-14, -4.9e-15, -2.2e-16, -8.8e-18),
        (-2.3e-19, 7.5e-18, -9.7e-17, 6.2e-16, -1.9e-15, 2.4e-15, 3.2e-16, 2.2e-17, 1.2e-18),
    ),
    ("AS", "1:3"): (
        (-1.1e-10, -2.4e-9, -1.2e-8, -7.2e-10, -2.8e-11, -9.1e-13, -2.6e-14, -7.4e-16, -1.9e-17),
        (-2.2e-18, -9.3e-17, -1.4e-15, -9.8e-15, -2.5e-14, -2.6e-15, -1.6e-16, -7.7e-18, -3.0e-19),
        (-7.2e-26, -4.4e-24, -1.1e-22, -1.5e-21, -1.2e-20, -4.9e-20, -8.9e-20, -1.2e-20, -1.0e-21),
        (-2.8e-33, -2.3e-31, -8.2e-30, -1.6e-28, -2.1e-27, -1.7e-26, -9.0e-26, -2.6e-25, -3.3e-25),
    ),
    ("HA", "1:3"): (
        (-1.9e-9, -4.2e-8, -2.3e-7, -1.5e-8, -7.0e-10, -2.8e-11, -1.0e-12, -3.9e-14, -1.4e-15),
        (-6.1e-16, -2.6e-14, -4.2e-13, -3.1e-12, -8.5e-12, -1.0e-12, -7.3e-14, -4.2e-15, -2.0e-16),
        (-2.9e-22, -1.8e-20, -5.1e-19, -7.3e-18, -6.0e-17, -2.6e-16, -4.9e-16, -8.0e-17, -7.1e-18),
        (-1.4e-28, -1.2e-26, -4.7e-25, -1.0e-23, -1.3e-22, -1.1e-21, -6.3e-21, -1.9e-20, -2.6e-20),
    ),
}

LEVELS = {
    # integral levels at e = 1e-3
    ("AS", "1:1", "J0"): 2.7590e-4,
    ("AS", "1:2", "L0"): -1.7029e-1,
    ("HA", "1:2", "L0"): -1.5416e-1,
    ("AS", "1:3", "L0"): 3.9162e-1,
    ("HA", "1:3", "L0"): 3.7189e-1,
}

PENDULUM_AMPLITUDE = {"AS": 53.5516, "HA": 216.419}
SEPARATRIX_AMPLITUDE = {"AS": 53.5554, "HA": 219.515}

# (angle, action) at e = 1e-3
EQUILIBRIA = {
    ("AS", "1:2"): ((0.0, 0.0549), (3.141592653589793, 0.2268), (1.9231, 0.1703), (4.3600, 0.1703)),
    ("HA", "1:2"): ((0.0, -1.3113), (3.141592653589793, 1.8061), (1.5891, 0.1541), (4.6940, 0.1541)),
    ("AS", "1:3"): ((0.0, -0.1201), (3.141592653589793, -0.1200)),
    ("HA", "1:3"): ((0.0, -0.1151), (3.141592653589793, -0.1143)),
}

# island widths for the centres at angle 0 and pi
ISLAND_WIDTHS = {
    ("AS", "1:2"): (0.23101, 0.11308),
    ("HA", "1:2"): (2.9657, 3.2692),
    ("AS", "1:3"): (2.0656e-3,),
    ("HA", "1:3"): (8.7360e-3,),
}

# (e_crit, branch angle, kind)
BIFURCATIONS = {
    ("AS", "1:1"): (),
    ("HA", "1:1"): ((0.328, None, "saddle-node"),),
    ("AS", "1:2"): ((0.0029, 3.141592653589793, "pitchfork"), (0.4467, 3.141592653589793, "pitchfork"), (0.4526, 0.0, "pitchfork")),
    ("HA", "1:2"): ((0.0638, 3.141592653589793, "pitchfork"), (0.3491, 3.141592653589793, "pitchfork"), (0.4625, 0.0, "pitchfork")),
    ("AS", "1:3"): (),
    ("HA", "1:3"): (),
}

TOLERANCES = {
    "radius_km": 1.0,
    "shape_abs": 1e-4,
    "coefficient_rel": 0.05,
    "level_rel": 1e-3,
    "pendulum_rel": 5e-3,
    "separatrix_rel": 1e-2,
    "equilibrium_abs": 1e-3,
    "width_rel": 0.05,
    "bifurcation_corotation": 0.005,
    "bifurcation_lindblad": 0.003,
    "remainder": 1e-5,
}

"""
Command-line entry point.

Every subcommand prints a CSV table (header row with units) on stdout.
With ``--out DIR`` the table is also written to ``DIR`` together with the
run configuration (``config.json``) and a manifest of inputs, versions and
wall time (``manifest.json``).

Exit status: 0 on success, 1 when ``reproduce-paper`` grades any criterion
as failed, 2 on configuration or usage errors, 3 on numerical failures.
"""

import argparse
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .body import GRAV_CONSTANT, load_body
from .errors import ConfigurationError, NumericError
from .output import csv_text, environment, write_json

EXIT_OK, EXIT_FAILED, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3


@dataclass
class RunConfig:
    """
    Everything that determines the output of one run.

    All fields have defaults, so ``--body AS --res 1:1`` alone is a
    complete configuration.
    """

    command: str = ""
    body: str = "AS"
    ell_max: int = 5
    rho_order: int = 16
    G: float = GRAV_CONSTANT
    res: str = "1:1"
    p: int = 1
    q: int = 1
    e: float = 1e-3
    e_range: tuple = (1e-3, 0.5)
    steps: int = 500
    grid: int = 101
    r_range: tuple = (1500.0, 3000.0)
    out: str = None
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_args(cls, args):
        known = {k: getattr(args, k) for k in cls.__dataclass_fields__ if k not in ("command", "extra") and getattr(args, k, None) is not None}
        for k in ("e_range", "r_range"):
            if k in known:
                known[k] = tuple(known[k])
        return cls(command=args.command_path, **known)

    def to_dict(self):
        d = asdict(self)
        d["e_range"] = list(self.e_range)
        d["r_range"] = list(self.r_range)
        return d


# ---------------------------------------------------------------------------
# shared builders


def _model(cfg):
    from .potential import PotentialModel

    return PotentialModel(load_body(cfg.body, G=cfg.G), ell_max=cfg.ell_max)


def _system(cfg):
    from .resonance import ResonantSystem

    return ResonantSystem(_model(cfg), cfg.res, rho_order=cfg.rho_order)


def _names(label):
    if label == "1:1":
        return "theta_rad", "I_km2_s"
    return "psi_rad", "G_km2_s"


# ---------------------------------------------------------------------------
# subcommands; each returns (header, rows)


def cmd_potential_sample(cfg):
    from .potential import frequencies, u_axisymmetric, u_nonaxisymmetric

    m = _model(cfg)
    rs = np.linspace(cfg.r_range[0], cfg.r_range[1], cfg.grid)
    ths = np.linspace(0.0, np.pi, 13)
    rows = []
    for r in rs:
        n, k = frequencies(m, r)
        us = u_axisymmetric(m, r)
        for th in ths:
            rows.append((r, th, us, u_nonaxisymmetric(m, r, th), n, k))
    return ["r_km", "theta_rad", "U_s_km2_s2", "U_ns_km2_s2", "n_rad_s", "kappa_rad_s"], rows


def cmd_resonance_locate(cfg):
    from .resonance import resonant_radius

    s = resonant_radius(_model(cfg), cfg.p, cfg.q)
    d = abs(s.r_kep - s.r_res) / s.r_kep
    return ["p", "q", "r_kep_km", "r_res_km", "d"], [(cfg.p, cfg.q, s.r_kep, s.r_res, d)]


def cmd_resonance_reduce(cfg):
    h = _system(cfg).reduce(cfg.e)
    rows = [("normal", 0, k, c) for k, c in enumerate(h.normal) if k > 0]
    for mult, poly in h.harmonics:
        rows += [("harmonic", mult, k, c) for k, c in enumerate(np.atleast_1d(poly))]
    rows += [(f"level_{name}", 0, 0, v) for name, v in sorted(h.levels.items())]
    return ["term", "cos_multiple", "action_power", "coeff_km2_s2_per_action_pow"], rows


def cmd_hamiltonian_expand(cfg):
    from .epicyclic import ExpansionCenter, assemble
    from .resonance import parse_label, resonant_radius

    m = _model(cfg)
    spec = resonant_radius(m, *parse_label(cfg.res))
    epi = assemble(ExpansionCenter.at(m, spec.r_res, cfg.rho_order), m)
    rows = [(c, *key) for key, c in sorted(epi.series.items())]
    return ["coeff", "i_pow", "j_half_pow", "k_theta", "k_phi", "kind"], rows


def cmd_kam_check(cfg):
    from .normalform import nondegeneracy_report

    rows = nondegeneracy_report(_model(cfg))
    keys = ["body", "resonance", "order", "omega1", "omega2", "A", "d04", "determinant", "verdict"]
    header = ["body", "resonance", "order", "omega1_rad_s", "omega2_rad_s", "A_per_km2", "d04_per_km2", "determinant_per_km4", "verdict"]
    return header, [tuple(r[k] for k in keys) for r in rows]


def cmd_portrait(cfg):
    from .dynamics import portrait

    h = _system(cfg).reduce(cfg.e)
    Q, X, E, sep = portrait(h, cfg.grid, cfg.grid)
    a, x = _names(cfg.res)
    rows = [("grid", *r) for r in zip(Q.ravel(), X.ravel(), E.ravel())]
    rows += [("separatrix", *r) for r in sep]
    return ["curve", a, x, "energy_km2_s2"], rows


def cmd_equilibria(cfg):
    from .dynamics import find_equilibria

    pts = find_equilibria(_system(cfg).reduce(cfg.e))
    a, x = _names(cfg.res)
    return [a, x, "kind", "hessian_det", "degenerate"], [(p.angle, p.action, p.kind, p.hessian_det, p.degenerate) for p in pts]


def cmd_amplitude(cfg):
    from .dynamics import CENTRE, find_equilibria, pendulum_amplitude, separatrix_amplitude

    sysm = _system(cfg)
    a, x = _names(cfg.res)
    rows = []
    for e in np.linspace(cfg.e_range[0], cfg.e_range[1], cfg.steps):
        h = sysm.reduce(float(e))
        try:
            pend = pendulum_amplitude(h)
        except NumericError:
            pend = None
        pts = find_equilibria(h)
        for c in (p for p in pts if p.kind == CENTRE):
            try:
                w = separatrix_amplitude(h, c, pts)
            except NumericError:
                w = None
            rows.append((float(e), c.angle, c.action, pend, w))
    return ["e", "centre_" + a, "centre_" + x, "pendulum_km2_s", "separatrix_km2_s"], rows


def cmd_bifurcation(cfg):
    from .dynamics import bifurcation_scan

    events = bifurcation_scan(_system(cfg).reduce, e_range=cfg.e_range, n_steps=cfg.steps)
    return ["e_crit", "angle_rad", "kind", "direction", "e_lo", "e_hi"], [
        (ev.e_crit, ev.angle_branch, ev.kind, ev.direction, *ev.bracket) for ev in events
    ]


COMMANDS = {
    ("potential", "sample"): cmd_potential_sample,
    ("resonance", "locate"): cmd_resonance_locate,
    ("resonance", "reduce"): cmd_resonance_reduce,
    ("hamiltonian", "expand"): cmd_hamiltonian_expand,
    ("kam-check",): cmd_kam_check,
    ("portrait",): cmd_portrait,
    ("equilibria",): cmd_equilibria,
    ("amplitude",): cmd_amplitude,
    ("bifurcation",): cmd_bifurcation,
}

OUTPUT_NAMES = {
    ("potential", "sample"): "potential.csv",
    ("resonance", "locate"): "resonance_locate.csv",
    ("resonance", "reduce"): "resonance_reduce.csv",
    ("hamiltonian", "expand"): "hamiltonian.csv",
    ("kam-check",): "kam.csv",
    ("portrait",): "portrait.csv",
    ("equilibria",): "equilibria.csv",
    ("amplitude",): "amplitude.csv",
    ("bifurcation",): "bifurcation.csv",
}


# ---------------------------------------------------------------------------
# parser


def _common(p, res=True):
    p.add_argument("--body", default=None, help="preset (AS, HA) or path to a body file [AS]")
    p.add_argument("--ell-max", dest="ell_max", type=int, default=None, help="potential truncation [5]")
    p.add_argument("--rho-order", dest="rho_order", type=int, default=None, help="rho truncation [16]")
    p.add_argument("--G", type=float, default=None, help=f"gravitational constant, km^3/(kg s^2) [{GRAV_CONSTANT}]")
    p.add_argument("--out", default=None, help="also write CSV, config.json and manifest.json here")
    if res:
        p.add_argument("--res", "--resonance", dest="res", choices=("1:1", "1:2", "1:3"), default=None, help="resonance [1:1]")


def build_parser():
    parser = argparse.ArgumentParser(prog="ringres", description="Ring-particle resonances around a rotating triaxial ellipsoid.")
    sub = parser.add_subparsers(dest="command")

    pot = sub.add_parser("potential", help="equatorial potential").add_subparsers(dest="action", required=True)
    s = pot.add_parser("sample", help="potential and frequencies on an (r, theta) grid")
    _common(s, res=False)
    s.add_argument("--r-range", dest="r_range", nargs=2, type=float, default=None, metavar=("R_MIN", "R_MAX"))
    s.add_argument("--grid", type=int, default=None, help="number of radii [101]")

    res = sub.add_parser("resonance", help="resonant radii and reductions").add_subparsers(dest="action", required=True)
    s = res.add_parser("locate", help="resonant radius of p:q")
    _common(s, res=False)
    s.add_argument("--p", type=int, default=None)
    s.add_argument("--q", type=int, default=None)
    s = res.add_parser("reduce", help="coefficients of the reduced Hamiltonian")
    _common(s)
    s.add_argument("--e", type=float, default=None, help="eccentricity [1e-3]")

    ham = sub.add_parser("hamiltonian", help="epicyclic series").add_subparsers(dest="action", required=True)
    s = ham.add_parser("expand", help="dump the series about a resonant radius")
    _common(s)
    s.add_argument("--format", choices=("csv",), default="csv")

    s = sub.add_parser("kam-check", help="non-degeneracy at the three resonances")
    _common(s, res=False)

    for name, helptext in (("portrait", "phase-portrait grid and separatrices"), ("equilibria", "equilibria and their stability")):
        s = sub.add_parser(name, help=helptext)
        _common(s)
        s.add_argument("--e", type=float, default=None, help="eccentricity [1e-3]")
        if name == "portrait":
            s.add_argument("--grid", type=int, default=None, help="points per axis [101]")

    s = sub.add_parser("amplitude", help="libration amplitudes over an eccentricity range")
    _common(s)
    s.add_argument("--e-range", dest="e_range", nargs=2, type=float, default=None, metavar=("E_MIN", "E_MAX"))
    s.add_argument("--steps", type=int, default=None, help="number of eccentricities [500]")

    s = sub.add_parser("bifurcation", help="bifurcation scan over eccentricity")
    _common(s)
    s.add_argument("--e-range", dest="e_range", nargs=2, type=float, default=None, metavar=("E_MIN", "E_MAX"))
    s.add_argument("--steps", type=int, default=None, help="scan points [500]")

    s = sub.add_parser("reproduce-paper", help="regenerate and grade all reference results")
    s.add_argument("--out", default="reproduction", help="output directory [reproduction]")
    s.add_argument("--steps", type=int, default=500, help="bifurcation scan points [500]")
    s.add_argument("--grid", type=int, default=101, help="phase-portrait points per axis [101]")
    s.add_argument("--workers", type=int, default=None, help="worker processes (RINGRES_THREADS caps the default)")
    return parser


def _emit(cfg, key, header, rows, t0):
    text = csv_text(header, rows)
    sys.stdout.write(text)
    if cfg.out:
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        name = OUTPUT_NAMES[key]
        (out / name).write_text(text)
        write_json(out / "config.json", cfg.to_dict())
        write_json(
            out / "manifest.json",
            {"command": cfg.command, "inputs": cfg.to_dict(), "outputs": [name], "versions": environment(), "wall_time_s": round(time.perf_counter() - t0, 3)},
        )


def _reproduce(args):
    from .reproduce import reproduce_paper

    report = reproduce_paper(args.out, n_steps=args.steps, portrait_grid=args.grid, workers=args.workers, log=print)
    print(f"{sum(c.passed for c in report.checks)}/{len(report.checks)} criteria passed; data in {args.out}")
    return EXIT_OK if report.passed else EXIT_FAILED


def run(argv):
    """Run one command; returns the exit status."""
    parser = build_parser()
    if not argv:
        parser.print_usage(sys.stderr)
        return EXIT_CONFIG
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_CONFIG
    t0 = time.perf_counter()
    try:
        if args.command == "reproduce-paper":
            return _reproduce(args)
        key = (args.command, args.action) if getattr(args, "action", None) else (args.command,)
        args.command_path = " ".join(key)
        cfg = RunConfig.from_args(args)
        if key == ("resonance", "locate"):
            if args.p is None or args.q is None:
                raise ConfigurationError("resonance locate needs --p and --q")
        header, rows = COMMANDS[key](cfg)
        _emit(cfg, key, header, rows, t0)
    except NumericError as exc:
        print(f"ringres: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConfigurationError, ValueError) as exc:
        print(f"ringres: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


def main(argv=None):
    return run(sys.argv[1:] if argv is None else list(argv))


if __name__ == "__main__":
    sys.exit(main())

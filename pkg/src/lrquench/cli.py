"""Command-line front end.

Subcommands run one experiment each and write machine-readable outputs:
a data table (CSV by default, JSON on request) plus a JSON sidecar
`{out}.meta.json` holding the full run configuration, package version,
and summary quantities.  Outputs are deterministic: re-running the same
configuration reproduces every file byte for byte.

Exit codes: 0 success, 1 usage error, 2 engine/numeric error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import __version__
from .ed import quench_trajectory
from .errors import LRQuenchError, ValidationError
from .gaussian import entropy_profile, run_quench
from .model import ModelParams
from .reproducing import scan
from .serialize import write_json, write_table
from .spinwave import (build_dispersion, classify_regime, is_marginal,
                       solve_classical_angle, velocity_scaling)

LN2 = math.log(2.0)


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _entropy_scale(base: str) -> float:
    return 1.0 if base == "nats" else 1.0 / LN2


def _params(args) -> ModelParams:
    site = None if args.quench_site is None else args.quench_site - 1
    return ModelParams(
        theta=args.theta_pi * math.pi,
        alpha=args.alpha,
        length=args.length,
        quench_site=site,
    )


def _sidecar(args, fields, extra) -> dict:
    config = {"command": args.command}
    for name in fields:
        config[name] = getattr(args, name.replace("-", "_"))
    meta = {"config": config, "version": __version__}
    meta.update(extra)
    return meta


def cmd_dispersion(args):
    params = ModelParams(theta=args.theta_pi * math.pi, alpha=args.alpha,
                         length=args.length)
    setup = solve_classical_angle(params)
    disp = build_dispersion(setup)
    rows = zip(disp.k, disp.kernel, disp.pair_coeff, disp.diag_coeff,
               disp.omega, disp.group_velocity)
    path = write_table(args.out, args.format,
                       ["k", "gamma_tilde", "a_k", "b_k", "omega", "v_g"],
                       rows)
    meta = _sidecar(args, ["theta-pi", "alpha", "length", "format"], {
        "theta": params.theta,
        "alpha": params.alpha,
        "length": params.length,
        "gamma": setup.angle,
        "v_max": disp.v_max,
        "k_at_vmax": disp.k_at_vmax,
        "regime": classify_regime(params.alpha),
        "files": [os.path.basename(path)],
    })
    write_json(args.out + ".meta.json", meta)


def cmd_regimes(args):
    lengths = [int(v) for v in args.length]
    rows = []
    per_alpha = {}
    for alpha in args.alpha:
        report = velocity_scaling(args.theta_pi * math.pi, alpha, lengths,
                                  t0=args.t0)
        for i, length in enumerate(report.lengths):
            rows.append((alpha, length, report.v_max_by_length[i],
                         report.boundary_time_by_length[i],
                         report.fast_mode_counts[i]))
        per_alpha["%g" % alpha] = {
            "regime": report.regime,
            "marginal": is_marginal(alpha),
            "fitted_exponent": report.fitted_exponent,
            "mode_count_exponent": report.mode_count_exponent,
        }
    path = write_table(args.out, args.format,
                       ["alpha", "length", "v_max", "t_b", "fast_mode_count"],
                       rows)
    meta = _sidecar(args, ["theta-pi", "alpha", "length", "t0", "format"], {
        "alphas": per_alpha,
        "files": [os.path.basename(path)],
    })
    write_json(args.out + ".meta.json", meta)


def cmd_quench_swt(args):
    params = _params(args)
    setup = solve_classical_angle(params)
    traj = run_quench(setup, t_max=args.tmax, dt=args.dt,
                      sample_dt=args.sample_dt, integrator=args.integrator)
    scale = _entropy_scale(args.entropy_base)
    entropies = scale * entropy_profile(traj.delta_m)
    rows = []
    for i, t in enumerate(traj.times):
        for site in range(params.length):
            rows.append((float(t), site + 1, traj.delta_m[i, site],
                         entropies[i, site]))
    path = write_table(args.out, args.format,
                       ["t", "site", "delta_m", "s1_entropy"], rows)
    drift = float(np.max(np.abs(traj.energies - traj.energies[0])))
    meta = _sidecar(args, ["theta-pi", "alpha", "length", "tmax", "dt",
                           "sample-dt", "quench-site", "integrator",
                           "entropy-base", "format"], {
        "quench_site_used": traj.quench_site + 1,
        "classical_angle": setup.angle,
        "energy_drift": drift,
        "beyond_lswt": traj.beyond_lswt,
        "files": [os.path.basename(path)],
    })
    write_json(args.out + ".meta.json", meta)


def cmd_quench_ed(args):
    params = _params(args)
    traj = quench_trajectory(params, t_max=args.tmax,
                             sample_dt=args.sample_dt)
    scale = _entropy_scale(args.entropy_base)
    ent_rows = []
    for i, t in enumerate(traj.times):
        for c in range(params.length - 1):
            spectrum = traj.spectra[i][c]
            lam1 = float(spectrum[0])
            lam2 = float(spectrum[1]) if spectrum.size > 1 else 0.0
            rest = float(spectrum[2:].sum()) if spectrum.size > 2 else 0.0
            ent_rows.append((float(t), c + 1,
                             scale * traj.entropies[i, c],
                             scale * traj.delta_entropies[i, c],
                             lam1, lam2, rest))
    site_rows = []
    for i, t in enumerate(traj.times):
        for site in range(params.length):
            site_rows.append((float(t), site + 1, traj.delta_m[i, site]))
    ent_path = write_table(args.out + "_entropy", args.format,
                           ["t", "cut", "entropy", "delta_entropy",
                            "lambda1", "lambda2", "lambda_rest_sum"],
                           ent_rows)
    site_path = write_table(args.out + "_sites", args.format,
                            ["t", "site", "delta_m"], site_rows)
    half = params.length // 2
    window = traj.times >= args.tmax / 2.0
    plateau = float(np.mean(traj.delta_entropies[window, half - 1])) * scale
    meta = _sidecar(args, ["theta-pi", "alpha", "length", "tmax",
                           "sample-dt", "quench-site", "entropy-base",
                           "format"], {
        "quench_site_used": params.quench_site + 1,
        "plateau_delta_entropy_half_cut": plateau,
        "plateau_window": [args.tmax / 2.0, args.tmax],
        "norm_drift": float(np.max(np.abs(traj.norms - 1.0))),
        "energy_drift": float(np.max(np.abs(traj.energies
                                            - traj.energies[0]))),
        "files": [os.path.basename(ent_path), os.path.basename(site_path)],
    })
    write_json(args.out + ".meta.json", meta)


def cmd_reproducing(args):
    lengths = [int(v) for v in args.length]
    rows = []
    per_alpha = {}
    for alpha in args.alpha:
        report = scan(alpha, lengths)
        for i, length in enumerate(report.lengths):
            for j, kind in enumerate(report.pair_kinds):
                rows.append((alpha, length, kind, report.p_values[i, j],
                             report.lower_bounds[i]))
        per_alpha["%g" % alpha] = {
            "verdict": report.verdict,
            "fitted_exponent": report.fitted_exponent,
            "marginal": report.marginal,
        }
    path = write_table(args.out, args.format,
                       ["alpha", "length", "pair_kind", "p_value",
                        "lower_bound"], rows)
    meta = _sidecar(args, ["alpha", "length", "format"], {
        "alphas": per_alpha,
        "files": [os.path.basename(path)],
    })
    write_json(args.out + ".meta.json", meta)


def _add_common(sub, length_default):
    sub.add_argument("--theta-pi", type=float, default=0.05,
                     help="transverse-field angle as a multiple of pi "
                          "(0.05 means pi/20)")
    sub.add_argument("--alpha", type=float, default=3.0,
                     help="power-law exponent of the couplings")
    sub.add_argument("--length", type=int, default=length_default,
                     help="number of sites")


def _add_output(sub):
    sub.add_argument("--out", required=True,
                     help="output path prefix (extensions are appended)")
    sub.add_argument("--format", choices=["csv", "json"], default="csv",
                     help="data table format")


def build_parser() -> _Parser:
    parser = _Parser(prog="lrquench",
                     description="Local-quench dynamics in the long-range "
                                 "transverse-field Ising chain.")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command")

    p = subs.add_parser("dispersion",
                        help="spin-wave dispersion and group velocities")
    _add_common(p, 500)
    _add_output(p)
    p.set_defaults(handler=cmd_dispersion)

    p = subs.add_parser("regimes",
                        help="maximal velocity scaling across lengths")
    p.add_argument("--theta-pi", type=float, default=0.05,
                   help="transverse-field angle as a multiple of pi")
    p.add_argument("--alpha", type=float, nargs="+",
                   default=[0.5, 1.5, 3.0], help="one or more exponents")
    p.add_argument("--length", type=int, nargs="+",
                   default=[256, 512, 1024, 2048, 4096],
                   help="geometric ladder of chain lengths (at least 4)")
    p.add_argument("--t0", type=float, default=50.0,
                   help="reference time for the fast-mode count")
    _add_output(p)
    p.set_defaults(handler=cmd_regimes)

    p = subs.add_parser("quench-swt",
                        help="harmonic quench evolution (large chains)")
    _add_common(p, 101)
    p.add_argument("--tmax", type=float, default=20.0)
    p.add_argument("--dt", type=float, default=0.002,
                   help="integrator step")
    p.add_argument("--sample-dt", type=float, default=0.1,
                   help="observable sampling interval")
    p.add_argument("--quench-site", type=int, default=None,
                   help="1-indexed flip site (default: center)")
    p.add_argument("--integrator", choices=["euler", "rk4"],
                   default="euler")
    p.add_argument("--entropy-base", choices=["nats", "bits"],
                   default="nats")
    _add_output(p)
    p.set_defaults(handler=cmd_quench_swt)

    p = subs.add_parser("quench-ed",
                        help="exact quench evolution (up to 14 sites)")
    _add_common(p, 12)
    p.add_argument("--tmax", type=float, default=8.0)
    p.add_argument("--sample-dt", type=float, default=0.1)
    p.add_argument("--quench-site", type=int, default=None,
                   help="1-indexed flip site (default: center)")
    p.add_argument("--entropy-base", choices=["nats", "bits"],
                   default="nats")
    _add_output(p)
    p.set_defaults(handler=cmd_quench_ed)

    p = subs.add_parser("reproducing",
                        help="reproducing-condition scan for the kernel")
    p.add_argument("--alpha", type=float, nargs="+",
                   default=[0.5, 1.0, 1.5], help="one or more exponents")
    p.add_argument("--length", type=int, nargs="+",
                   default=[100, 200, 400, 800],
                   help="even lattice sizes, increasing (at least 3)")
    _add_output(p)
    p.set_defaults(handler=cmd_reproducing)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "handler"):
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: a subcommand is required",
              file=sys.stderr)
        return 1
    try:
        args.handler(args)
    except ValidationError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 1
    except LRQuenchError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

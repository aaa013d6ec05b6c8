"""Command-line figure scripts, one per figure kind.

All scripts share the flags --in, --out, and --overlay-vmax plus axis
overrides; heatmaps add --value/--position and the entropy plots add
--cut.  Schema problems abort with exit code 1 before any output file
is written.
"""

from __future__ import annotations

import argparse
import sys

from .figspec import SCALES, FigureSpec, SchemaError
from .render import render

_DESCRIPTIONS = {
    "heatmap": "site-versus-time heatmap of a quench observable, with an "
               "optional light-cone guide t = |x - x0| / v",
    "dispersion": "frequency and group velocity versus wavenumber; repeat "
                  "--in to overlay several tables",
    "scaling": "log-log maximal group velocity versus chain length with "
               "fitted slopes per exponent",
    "entropy-growth": "entanglement entropy change versus time for each "
                      "bipartition cut",
    "spectrum": "leading Schmidt eigenvalues versus time at one cut",
}


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser(kind: str) -> _Parser:
    parser = _Parser(prog=f"plot-{kind}", description=_DESCRIPTIONS[kind])
    parser.add_argument("--in", dest="inputs", nargs="+", required=True,
                        metavar="CSV", help="input data table(s)")
    parser.add_argument("--out", required=True, help="output PNG path")
    parser.add_argument("--overlay-vmax", type=float, default=None,
                        help="group velocity for the heatmap light-cone "
                             "guide (ignored by other kinds)")
    parser.add_argument("--xlabel", default=None)
    parser.add_argument("--ylabel", default=None)
    parser.add_argument("--xscale", choices=SCALES, default=None)
    parser.add_argument("--yscale", choices=SCALES, default=None)
    if kind == "heatmap":
        parser.add_argument("--value", default="delta_m",
                            help="column to color by")
        parser.add_argument("--position", default="site",
                            help="column giving the spatial coordinate")
    if kind in ("entropy-growth", "spectrum"):
        parser.add_argument("--cut", type=int, default=None,
                            help="bipartition cut (default: all cuts for "
                                 "entropy growth, the half cut for spectra)")
    return parser


def run(kind: str, argv=None) -> int:
    parser = build_parser(kind)
    args = parser.parse_args(argv)
    try:
        spec = FigureSpec(
            kind=kind,
            inputs=tuple(args.inputs),
            out_path=args.out,
            xlabel=args.xlabel,
            ylabel=args.ylabel,
            xscale=args.xscale,
            yscale=args.yscale,
            position_column=getattr(args, "position", "site"),
            value_column=getattr(args, "value", "delta_m"),
            overlay_vmax=args.overlay_vmax,
            cut=getattr(args, "cut", None),
        )
        render(spec)
    except (SchemaError, ValueError, OSError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main_heatmap(argv=None) -> int:
    return run("heatmap", argv)


def main_dispersion(argv=None) -> int:
    return run("dispersion", argv)


def main_scaling(argv=None) -> int:
    return run("scaling", argv)


def main_entropy_growth(argv=None) -> int:
    return run("entropy-growth", argv)


def main_spectrum(argv=None) -> int:
    return run("spectrum", argv)

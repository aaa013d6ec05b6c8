"""Turn a validated FigureSpec into a PNG file.

Rendering is read-only over the inputs and deterministic: fixed style,
fixed raster size, and no date or software stamps in the PNG metadata,
so the same inputs reproduce the output byte for byte.  All data
preparation (and therefore every SchemaError) happens before a figure
object is created; a failed spec leaves no output file behind.
"""

from __future__ import annotations

import math
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .figspec import FigureSpec, SchemaError, load_table

_SAVE_OPTS = {
    "dpi": 150,
    "format": "png",
    "metadata": {"Date": None, "Software": None},
}


def fit_loglog(x, y) -> float:
    """Least-squares exponent of y ~ x**m on doubly logarithmic axes."""
    logx = np.log(np.asarray(x, dtype=float))
    logy = np.log(np.asarray(y, dtype=float))
    return float(np.polyfit(logx, logy, 1)[0])


def _pivot(table, pos_name, val_name, path):
    """Reshape a long (t, position, value) table onto a full grid."""
    t, pos, val = table["t"], table[pos_name], table[val_name]
    times = np.unique(t)
    places = np.unique(pos)
    order = np.lexsort((pos, t))
    if t.size > 1:
        same = (np.diff(t[order]) == 0) & (np.diff(pos[order]) == 0)
        if np.any(same):
            raise SchemaError(f"{path}: duplicate time/position rows")
    if times.size * places.size != t.size:
        raise SchemaError(f"{path}: expected a full {times.size} x "
                          f"{places.size} time/position grid, "
                          f"got {t.size} rows")
    grid = val[order].reshape(times.size, places.size)
    return times, places, grid


def _apply_axes(ax, spec, xlabel, ylabel, xscale="linear", yscale="linear"):
    ax.set_xlabel(spec.xlabel if spec.xlabel is not None else xlabel)
    ax.set_ylabel(spec.ylabel if spec.ylabel is not None else ylabel)
    ax.set_xscale(spec.xscale if spec.xscale is not None else xscale)
    ax.set_yscale(spec.yscale if spec.yscale is not None else yscale)


def _build_heatmap(spec, tables):
    times, places, grid = _pivot(tables[0], spec.position_column,
                                 spec.value_column, spec.inputs[0])
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    extent = (places[0] - 0.5, places[-1] + 0.5, times[0], times[-1])
    image = ax.imshow(grid, origin="lower", aspect="auto", extent=extent,
                      cmap="inferno", interpolation="nearest")
    fig.colorbar(image, ax=ax, label=spec.value_column)
    if spec.overlay_vmax is not None:
        # light-cone guide centered on the strongest first-sample signal
        center = places[int(np.argmax(np.abs(grid[0])))]
        span = np.linspace(places[0], places[-1], 256)
        cone = times[0] + np.abs(span - center) / spec.overlay_vmax
        ax.plot(span, cone, "w--", linewidth=1.2)
        ax.set_ylim(times[0], times[-1])
    _apply_axes(ax, spec, spec.position_column, "time")
    return fig


def _build_dispersion(spec, tables):
    curves = []
    for path, table in zip(spec.inputs, tables):
        order = np.argsort(table["k"])
        name = os.path.splitext(os.path.basename(path))[0]
        curves.append((name, table["k"][order], table["omega"][order],
                       table["v_g"][order]))
    fig, (ax_top, ax_bot) = plt.subplots(2, 1, sharex=True,
                                         figsize=(6.4, 6.0))
    for name, k, omega, v_g in curves:
        ax_top.plot(k, omega, label=name)
        ax_bot.plot(k, v_g, label=name)
    ax_top.set_ylabel(spec.ylabel if spec.ylabel is not None
                      else "frequency omega(k)")
    ax_bot.set_ylabel("group velocity")
    ax_bot.set_xlabel(spec.xlabel if spec.xlabel is not None
                      else "wavenumber k")
    for ax in (ax_top, ax_bot):
        ax.set_xscale(spec.xscale if spec.xscale is not None else "linear")
        ax.set_yscale(spec.yscale if spec.yscale is not None else "linear")
        if len(curves) > 1:
            ax.legend()
    return fig


def _build_scaling(spec, tables):
    table = tables[0]
    groups = []
    for alpha in np.unique(table["alpha"]):
        mask = table["alpha"] == alpha
        order = np.argsort(table["length"][mask])
        length = table["length"][mask][order]
        v_max = table["v_max"][mask][order]
        label = f"alpha = {alpha:g}"
        fit = None
        if length.size >= 2 and np.all(v_max > 0) and np.all(length > 0):
            slope = fit_loglog(length, v_max)
            label += f", slope {slope:+.3f}"
            anchor = v_max[0] / length[0] ** slope
            fit = anchor * length ** slope
        groups.append((length, v_max, fit, label))
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    for length, v_max, fit, label in groups:
        line, = ax.plot(length, v_max, "o-", label=label)
        if fit is not None:
            ax.plot(length, fit, ":", color=line.get_color(), linewidth=1.0)
    _apply_axes(ax, spec, "chain length L", "maximal group velocity",
                "log", "log")
    ax.legend()
    return fig


def _select_cuts(table, spec, path):
    cuts = np.unique(table["cut"])
    if spec.cut is None:
        return cuts
    if spec.cut not in cuts:
        present = ", ".join(str(int(c)) for c in cuts)
        raise SchemaError(f"{path}: cut {spec.cut} not in table "
                          f"(cuts present: {present})")
    return np.array([float(spec.cut)])


def _build_entropy_growth(spec, tables):
    table = tables[0]
    cuts = _select_cuts(table, spec, spec.inputs[0])
    series = []
    for cut in cuts:
        mask = table["cut"] == cut
        order = np.argsort(table["t"][mask])
        series.append((int(cut), table["t"][mask][order],
                       table["delta_entropy"][mask][order]))
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    for cut, t, delta in series:
        ax.plot(t, delta, label=f"cut {cut}")
    ax.axhline(math.log(2.0), linestyle=":", color="gray", label="ln 2")
    _apply_axes(ax, spec, "time", "entanglement entropy change")
    ax.legend(ncols=2, fontsize="small")
    return fig


def _build_spectrum(spec, tables):
    table = tables[0]
    cuts = np.unique(table["cut"])
    # default to the half-chain bipartition
    want = spec.cut if spec.cut is not None else int((cuts.max() + 1) // 2)
    if want not in cuts:
        present = ", ".join(str(int(c)) for c in cuts)
        raise SchemaError(f"{spec.inputs[0]}: cut {want} not in table "
                          f"(cuts present: {present})")
    mask = table["cut"] == want
    order = np.argsort(table["t"][mask])
    t = table["t"][mask][order]
    curves = [(name, table[name][mask][order])
              for name in ("lambda1", "lambda2", "lambda_rest_sum")]
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    for name, values in curves:
        ax.plot(t, values, label=name)
    ax.axhline(0.5, linestyle=":", color="gray", linewidth=1.0)
    ax.set_title(f"cut {want}")
    _apply_axes(ax, spec, "time", "Schmidt eigenvalue")
    ax.legend()
    return fig


_BUILDERS = {
    "heatmap": _build_heatmap,
    "dispersion": _build_dispersion,
    "scaling": _build_scaling,
    "entropy-growth": _build_entropy_growth,
    "spectrum": _build_spectrum,
}


def render(spec: FigureSpec) -> str:
    """Validate the spec's inputs, draw the figure, write a PNG."""
    tables = [load_table(path, spec.required_columns())
              for path in spec.inputs]
    fig = _BUILDERS[spec.kind](spec, tables)
    try:
        fig.savefig(spec.out_path, **_SAVE_OPTS)
    finally:
        plt.close(fig)
    return spec.out_path

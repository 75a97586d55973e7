"""Rendering of the standard figures from experiment CSV outputs.

Rendering is a pure function of the CSV contents and the recipe: fonts,
figure sizes and the (seed-free) drawing pipeline are pinned, so
identical inputs produce identical image bytes.  Density maps use a
sequential colormap in which darker shading means lower values.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .recipes import RECIPES  # noqa: E402

RC_PARAMS = {
    "font.family": "DejaVu Sans",
    "font.size": 9,
    "axes.titlesize": 9,
    "axes.labelsize": 9,
    "figure.dpi": 130,
    "savefig.dpi": 130,
    "lines.linewidth": 1.2,
    "axes.grid": False,
    "svg.hashsalt": "fluxfigures",
}

#: low values dark, high values bright
DEFAULT_CMAP = "viridis"


class MissingColumnError(ValueError):
    def __init__(self, path, column):
        super().__init__(f"{path}: missing required column {column!r}")
        self.column = column


class EmptyTableError(ValueError):
    def __init__(self, path):
        super().__init__(f"{path}: no data rows")


def load_csv(path: Path, required_columns) -> dict:
    """Read a CSV into numpy columns, converting to float where possible."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyTableError(path) from None
        rows = list(reader)
    if not rows:
        raise EmptyTableError(path)
    for col in required_columns:
        if col not in header:
            raise MissingColumnError(path, col)
    table = {}
    columns = list(zip(*rows))
    for name, values in zip(header, columns):
        try:
            table[name] = np.array([float(v) for v in values])
        except ValueError:
            table[name] = np.array(values)
    return table


def _reshape_map(table):
    f_values = np.unique(table["f"])
    omega_values = np.unique(table["omega"])
    shape = (f_values.size, omega_values.size)
    if shape[0] * shape[1] != table["f"].size:
        raise ValueError("map table is not a complete (f, omega) grid")
    order = np.lexsort((table["omega"], table["f"]))
    amp = table["amplitude"][order].reshape(shape)
    phase = table["phase_over_pi"][order].reshape(shape)
    return f_values, omega_values, amp, phase


def _draw_map(ax, f_values, omega_values, values, cmap, label):
    mesh = ax.pcolormesh(f_values, omega_values, values.T, cmap=cmap, shading="auto")
    ax.set_xlabel("flux bias f")
    ax.set_ylabel("drive frequency (omega_0)")
    cbar = ax.figure.colorbar(mesh, ax=ax)
    cbar.set_label(label)


def _sweep_panels(axes, table, label, log_amplitude):
    ax_amp, ax_phase = axes
    ax_amp.plot(table["omega"], table["amplitude"], color="C0")
    if log_amplitude:
        ax_amp.set_yscale("log")
    ax_amp.set_xlabel("drive frequency (omega_0)")
    ax_amp.set_ylabel("|chi|")
    ax_amp.set_title(label)
    ax_phase.plot(table["omega"], table["phase_over_pi"], color="C1")
    ax_phase.set_xlabel("drive frequency (omega_0)")
    ax_phase.set_ylabel("phase / pi")


def _render_fig3(tables, options):
    fig, axes = plt.subplots(1, 3, figsize=(9.5, 3.0))
    ev = tables["eigenvalues.csv"]
    axes[0].plot(ev["index"], ev["eigenvalue"], "o", ms=3, color="C0")
    axes[0].set_xlabel("level")
    axes[0].set_ylabel("energy (hbar omega_0)")
    cur = tables["currents.csv"]
    for level, style in ((0, "o-"), (1, "s--")):
        sel = cur["level"] == level
        axes[1].plot(cur["qubit"][sel], cur["current"][sel], style,
                     ms=4, label=f"level {int(level)}")
    axes[1].set_xlabel("qubit")
    axes[1].set_ylabel("loop current (I_S)")
    axes[1].legend(frameon=False)
    corr = tables["correlations.csv"]
    sel = corr["i"] >= 2
    axes[2].plot(corr["i"][sel], corr["correlation"][sel], "o-", ms=4, color="C2")
    axes[2].set_xlabel("qubit i")
    axes[2].set_ylabel("C(1, i) (I_S^2)")
    return fig


def _render_fig4(tables, options):
    fig, axes = plt.subplots(1, 2, figsize=(6.5, 3.0))
    ev = tables["eigenvalues.csv"]
    axes[0].plot(ev["index"], ev["eigenvalue"], "o", ms=3, color="C0")
    axes[0].set_xlabel("level")
    axes[0].set_ylabel("energy (hbar omega_0)")
    cur = tables["currents.csv"]
    for level, style in ((0, "o-"), (1, "s--")):
        sel = cur["level"] == level
        axes[1].plot(cur["qubit"][sel], cur["current"][sel], style,
                     ms=4, label=f"level {int(level)}")
    axes[1].set_xlabel("qubit")
    axes[1].set_ylabel("loop current (I_S)")
    axes[1].legend(frameon=False)
    return fig


def _render_fig5(tables, options):
    fig, ax = plt.subplots(figsize=(4.2, 3.2))
    flux = tables["static_flux.csv"]
    for topology in sorted(set(flux["topology"])):
        sel = flux["topology"] == topology
        ax.plot(flux["f"][sel], flux["phi"][sel], "o-", ms=3, label=str(topology))
    ax.set_xlabel("flux bias f")
    ax.set_ylabel("static flux (arb. units)")
    ax.legend(frameon=False)
    return fig


def _render_fig6(tables, options):
    fig, axes = plt.subplots(2, 2, figsize=(7.0, 5.2))
    _sweep_panels(axes[:, 0], tables["response_coupled.csv"], "coupled",
                  options.get("log_amplitude", False))
    _sweep_panels(axes[:, 1], tables["response_uncoupled.csv"], "uncoupled",
                  options.get("log_amplitude", False))
    return fig


def _render_fig7(tables, options):
    cmap = options.get("cmap", DEFAULT_CMAP)
    f_values, omega_values, amp, phase = _reshape_map(tables["response_map.csv"])
    fig, axes = plt.subplots(2, 2, figsize=(8.0, 6.0))
    _draw_map(axes[0, 0], f_values, omega_values, amp, cmap, "|chi|")
    for ax, target in zip((axes[0, 1], axes[1, 0]), (0.1, 0.5)):
        k = int(np.argmin(np.abs(omega_values - target)))
        ax.plot(f_values, amp[:, k], color="C0")
        ax.set_xlabel("flux bias f")
        ax.set_ylabel("|chi|")
        ax.set_title(f"cut at omega = {omega_values[k]:.2f}")
    _draw_map(axes[1, 1], f_values, omega_values, phase, cmap, "phase / pi")
    return fig


def _render_fig8(tables, options):
    cmap = options.get("cmap", DEFAULT_CMAP)
    fig, axes = plt.subplots(2, 2, figsize=(8.0, 6.0))
    for col, (name, label) in enumerate(
        (("response_map_la.csv", "chain"), ("response_map_ca.csv", "cross"))
    ):
        f_values, omega_values, amp, phase = _reshape_map(tables[name])
        _draw_map(axes[0, col], f_values, omega_values, amp, cmap, f"|chi| ({label})")
        _draw_map(axes[1, col], f_values, omega_values, phase, cmap, f"phase / pi ({label})")
    return fig


def _render_fig9(tables, options):
    cmap = options.get("cmap", DEFAULT_CMAP)
    fig = plt.figure(figsize=(8.0, 8.5))
    grid = fig.add_gridspec(3, 2)
    axes_top = [fig.add_subplot(grid[0, j]) for j in range(2)]
    axes_mid = [fig.add_subplot(grid[1, j]) for j in range(2)]
    _sweep_panels(axes_top, tables["response_coupled.csv"], "coupled, disordered",
                  options.get("log_amplitude", False))
    _sweep_panels(axes_mid, tables["response_uncoupled.csv"], "uncoupled, disordered",
                  options.get("log_amplitude", False))
    f_values, omega_values, amp, phase = _reshape_map(tables["response_map.csv"])
    ax_map1 = fig.add_subplot(grid[2, 0])
    ax_map2 = fig.add_subplot(grid[2, 1])
    _draw_map(ax_map1, f_values, omega_values, amp, cmap, "|chi|")
    _draw_map(ax_map2, f_values, omega_values, phase, cmap, "phase / pi")
    return fig


def _render_fig10(tables, options):
    fig, axes = plt.subplots(1, 2, figsize=(8.0, 3.2), sharey=True)
    for ax, (name, label) in zip(
        axes, (("driven_scan_la.csv", "chain"), ("driven_scan_ca.csv", "cross"))
    ):
        scan = tables[name]
        for qubit in sorted(set(scan["qubit"].astype(int))):
            sel = scan["qubit"] == qubit
            ax.plot(scan["omega"][sel], scan["sigma_z_expectation"][sel],
                    label=f"qubit {qubit}")
        ax.set_xlabel("drive frequency (omega_0)")
        ax.set_title(label)
    axes[0].set_ylabel("sigma_z expectation")
    axes[1].legend(frameon=False, fontsize=7)
    return fig


def _render_fig11(tables, options):
    fig = plt.figure(figsize=(8.0, 6.5))
    grid = fig.add_gridspec(2, 2)
    ax_top = fig.add_subplot(grid[0, :])
    med = tables["medians.csv"]
    topologies = sorted(set(med["topology"]))
    dims = sorted(set(med["l_r"].astype(int)))
    for topology in topologies:
        for l_r in dims:
            sel = (med["topology"] == topology) & (med["l_r"] == l_r)
            if np.any(sel):
                order = np.argsort(med["delta"][sel])
                ax_top.plot(med["delta"][sel][order], med["median_vpt"][sel][order],
                            "o-", ms=4, label=f"{topology}, l_r={l_r}")
    ax_top.set_xlabel("tunneling inhomogeneity delta")
    ax_top.set_ylabel("median VPT")
    ax_top.legend(frameon=False, fontsize=8)
    for j, name in enumerate(("qrc_series_a.csv", "qrc_series_b.csv")):
        ax = fig.add_subplot(grid[1, j])
        series = tables[name]
        ax.plot(series["k"], series["y_k"], "-", color="C0", label="truth")
        ax.plot(series["k"], series["y_pred"], "--", color="C3", label="prediction")
        ax.set_xlabel("step")
        ax.set_ylabel("normalized signal")
        if j == 0:
            ax.legend(frameon=False, fontsize=8)
    return fig


_RENDERERS = {
    "fig3": _render_fig3,
    "fig4": _render_fig4,
    "fig5": _render_fig5,
    "fig6": _render_fig6,
    "fig7": _render_fig7,
    "fig8": _render_fig8,
    "fig9": _render_fig9,
    "fig10": _render_fig10,
    "fig11": _render_fig11,
}


def render(figure_id: str, input_dir, out_path, options=None) -> Path:
    """Render one figure from the CSVs in ``input_dir`` to ``out_path``.

    All inputs are loaded and validated before anything is drawn; on any
    error no output file is written.
    """
    if figure_id not in RECIPES:
        raise ValueError(f"unknown recipe {figure_id!r}; known: {sorted(RECIPES)}")
    recipe = RECIPES[figure_id]
    options = dict(options or {})
    input_dir = Path(input_dir)
    tables = {
        name: load_csv(input_dir / name, cols) for name, cols in recipe.inputs.items()
    }
    with plt.rc_context(RC_PARAMS):
        fig = _RENDERERS[figure_id](tables, options)
        fig.tight_layout()
        out_path = Path(out_path)
        out_path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(out_path)
        plt.close(fig)
    return out_path

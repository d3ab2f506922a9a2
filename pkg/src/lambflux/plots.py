"""Figure rendering for sweep outputs.

Imported lazily by the CLI so headless runs without --plot never touch
matplotlib.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["plot_shift_remainder", "plot_current_bound", "plot_variant_comparison"]

_COLORS = {"drude": "tab:blue", "hard": "tab:red", "gaussian": "black"}


def _dt_axis(rows, omega_d):
    return np.array([r.delta_t for r in rows]) / omega_d


def plot_shift_remainder(rows, omega_d, path):
    """Matsubara remainder of bath 2 vs its estimate, increments inset."""
    x = _dt_axis(rows, omega_d)
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    ax.plot(x, [r.r_est_2_1 for r in rows], color="green", label="estimate")
    ax.plot(x, [r.r_2_1 for r in rows], "k--", label="series value")
    ax.set_xlabel(r"$\Delta T/\omega_D$")
    ax.set_ylabel(r"$R_{2,1}$")
    ax.legend(frameon=False)
    inset = ax.inset_axes([0.55, 0.15, 0.4, 0.35])
    inset.plot(x, [r.delta1 for r in rows], color="red", label=r"$\delta_1$")
    inset.plot(x, [r.delta2 for r in rows], color="blue", label=r"$\delta_2$")
    inset.set_xlabel(r"$\Delta T/\omega_D$", fontsize=8)
    inset.tick_params(labelsize=7)
    inset.legend(fontsize=7, frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)
    return path


def plot_current_bound(rows_by_label, omega_d, path):
    """Shift-free vs shifted current magnitudes against the supremum."""
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    for i, (label, rows) in enumerate(rows_by_label.items()):
        x = _dt_axis(rows, omega_d)
        color = f"C{i}"
        ax.plot(x, np.abs([r.current_with_lamb for r in rows]), ":", color=color,
                label=f"{label} shifted")
        ax.plot(x, np.abs([r.current_no_lamb for r in rows]), "--", color=color,
                label=f"{label} no shift")
        ax.axhline(rows[0].supremum, color="orange", lw=1.0)
    ax.set_xscale("log")
    ax.set_xlabel(r"$\Delta T/\omega_D$")
    ax.set_ylabel(r"$|\mathcal{J}_1|$")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)
    return path


def plot_variant_comparison(rows_by_variant, omega_d, path):
    """Shifted and shift-free currents for each cutoff, increments inset."""
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    for variant, rows in rows_by_variant.items():
        x = _dt_axis(rows, omega_d)
        color = _COLORS.get(variant, None)
        ax.plot(x, np.abs([r.current_with_lamb for r in rows]), color=color, label=variant)
        ax.plot(x, np.abs([r.current_no_lamb for r in rows]), "--", color=color)
    ax.set_xscale("log")
    ax.set_xlabel(r"$\Delta T/\omega_D$")
    ax.set_ylabel(r"$|\mathcal{J}_1|$")
    ax.legend(frameon=False)
    inset = ax.inset_axes([0.12, 0.55, 0.35, 0.4])
    for variant, rows in rows_by_variant.items():
        x = _dt_axis(rows, omega_d)
        color = _COLORS.get(variant, None)
        inset.plot(x, [r.delta1 for r in rows], color=color)
        inset.plot(x, [r.delta2 for r in rows], ":", color=color)
    inset.tick_params(labelsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)
    return path

"""File-rendered matplotlib figures for the CLI report paths.

Everything here draws to a file and returns the path; no interactive backend
is ever touched, so the functions are safe in headless runs and tests.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def render_sweep_curves(curves, path) -> Path:
    """All sweep curves on one axis, labelled state/kind."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for curve in curves:
        alpha = curve.kind.alpha
        suffix = "" if alpha is None else f" (alpha={alpha:g})"
        ax.plot(curve.grid, curve.values, lw=1.4, label=f"{curve.state_label} {curve.kind.name}{suffix}")
    ax.set_xlabel("transmission T")
    ax.set_ylabel("monotone value")
    ax.axvline(0.5, color="0.8", lw=0.8, zorder=0)
    ax.legend(fontsize=8, frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=200)
    plt.close(fig)
    return path


def render_fig1(curves, path) -> Path:
    """Family of Renyi sweeps, order increasing downward, peak guide at T = 1/2."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    cmap = plt.get_cmap("viridis")
    n = max(len(curves) - 1, 1)
    for i, curve in enumerate(curves):
        alpha = curve.kind.alpha
        ax.plot(curve.grid, curve.values, lw=1.3, color=cmap(i / n), label=f"alpha={alpha:g}")
    ax.axvline(0.5, color="0.85", lw=0.8, zorder=0)
    state = curves[0].state_label if curves else ""
    ax.set_xlabel("transmission T")
    ax.set_ylabel("Renyi entropy of the kept arm (nats)")
    ax.set_title(f"Renyi entropies of {state} after loss")
    ax.legend(fontsize=7, ncol=2, frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=200)
    plt.close(fig)
    return path


def render_report_margins(reports, path) -> Path:
    """Horizontal bars of worst margins, failures in red, tolerances as ticks."""
    path = Path(path)
    rows = [r for r in reports if r.expectation != "info"]
    if not rows:
        rows = list(reports)
    labels = [f"{r.check} [{r.state}]" for r in rows]
    margins = np.array([r.worst_margin for r in rows])
    # symmetric log keeps +-1e-15 and +-10 on one readable axis
    display = np.sign(margins) * np.log10(1.0 + np.abs(margins) * 1e15)
    colors = ["#b22222" if not r.passed else "#2e7d32" for r in rows]
    height = max(3.0, 0.18 * len(rows) + 1.2)
    fig, ax = plt.subplots(figsize=(8.5, height))
    ax.barh(np.arange(len(rows)), display, color=colors, height=0.7)
    ax.axvline(0.0, color="0.3", lw=0.8)
    ax.set_yticks(np.arange(len(rows)))
    ax.set_yticklabels(labels, fontsize=5)
    ax.invert_yaxis()
    ax.set_xlabel("signed worst margin, log-compressed (green pass, red fail)")
    fig.tight_layout()
    fig.savefig(path, dpi=200)
    plt.close(fig)
    return path


def render_polynomial(poly, path, title="overlap polynomial") -> Path:
    """Stem plot of the coefficients p_m over the power m."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6.5, 4.0))
    m = np.arange(poly.coefficients.size)
    markerline, stemlines, baseline = ax.stem(m, poly.coefficients)
    plt.setp(markerline, markersize=4)
    plt.setp(stemlines, linewidth=1.2)
    plt.setp(baseline, color="0.6", linewidth=0.8)
    ax.set_xlabel("power m of (1 - 2T)")
    ax.set_ylabel("coefficient p_m")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=200)
    plt.close(fig)
    return path

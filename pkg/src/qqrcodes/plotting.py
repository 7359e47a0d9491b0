"""Matplotlib figures for the report paths of the CLI.

Every function writes one file and returns its path.  The Agg backend is
selected on import so figures render without a display.
"""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .analytics import CdfTable, normal_cdf  # noqa: E402
from .curves import PointDistribution  # noqa: E402
from .enumerator import WeightDistribution  # noqa: E402

STYLE = {
    "figure.figsize": (6.4, 4.0),
    "font.size": 10,
    "axes.labelsize": 10,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "legend.frameon": False,
    "savefig.dpi": 150,
    "savefig.bbox": "tight",
}


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_cdf_comparison(tables: dict[str, CdfTable], path, zmin: float = -4, zmax: float = 4) -> Path:
    """Step c.d.f.s of one or more codes against the normal c.d.f."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        z = np.linspace(zmin, zmax, 801)
        ax.plot(z, [normal_cdf(v) for v in z], color="black", lw=1.2, label=r"$\Phi(z)$")
        for label, tab in tables.items():
            keep = (tab.grid >= zmin) & (tab.grid <= zmax)
            ax.step(tab.grid[keep], tab.A[keep], where="post", lw=1.0,
                    label=f"{label} (sup {tab.sup_distance:.3f})")
        ax.set_xlabel("z")
        ax.set_ylabel("A(z)")
        ax.set_xlim(zmin, zmax)
        ax.set_ylim(-0.02, 1.02)
        ax.legend(loc="upper left")
        return _save(fig, path)


def plot_weight_distribution(w: WeightDistribution, path, title: str | None = None, log: bool = True) -> Path:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        support = [j for j, c in enumerate(w.counts) if c]
        ax.bar(support, [w.counts[j] for j in support], width=0.8, color="tab:blue")
        if log:
            ax.set_yscale("log")
        ax.set_xlabel("weight j")
        ax.set_ylabel(r"$A_j$")
        ax.set_xlim(-0.5, w.n + 0.5)
        if title:
            ax.set_title(title)
        return _save(fig, path)


def plot_interlace(w: WeightDistribution, b: PointDistribution, path) -> Path:
    """Codeword weights A_k next to curve point counts B_k."""
    p = b.p
    ks = np.arange(2 * p + 1)
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        ax.bar(ks - 0.2, [w[k] for k in ks], width=0.4, label=r"$A_k$ (codewords)")
        ax.bar(ks + 0.2, [b[k] for k in ks], width=0.4, label=r"$B_k$ (curves)")
        ax.set_yscale("symlog", linthresh=1)
        ax.set_xlabel("k")
        ax.set_ylabel("count")
        ax.set_title(f"p = {p}")
        ax.legend()
        return _save(fig, path)


def plot_zeta_roots(roots, target: float, path, title: str | None = None) -> Path:
    with plt.rc_context({**STYLE, "figure.figsize": (4.8, 4.8)}):
        fig, ax = plt.subplots()
        t = np.linspace(0, 2 * np.pi, 400)
        ax.plot(target * np.cos(t), target * np.sin(t), color="grey", lw=0.8, ls="--",
                label=r"$|T| = q^{-1/2}$")
        roots = np.asarray(roots, dtype=complex)
        ax.scatter(roots.real, roots.imag, s=14, color="tab:red", zorder=3, label="roots")
        ax.set_aspect("equal")
        ax.set_xlabel("Re T")
        ax.set_ylabel("Im T")
        if title:
            ax.set_title(title)
        ax.legend(loc="upper right", fontsize=8)
        return _save(fig, path)

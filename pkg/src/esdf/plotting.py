"""Static SVG figures for sweeps, result summaries and partition embeddings."""
from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

# fixed ids and no timestamp so reruns give identical files
matplotlib.rcParams["svg.hashsalt"] = "esdf"
SVG_METADATA = {"Date": None, "Creator": None}

CRITERION_COLORS = {"diversity": "tab:blue", "frequency": "tab:green", "weight": "tab:red"}

ROLE_STYLE = {
    "distinct": dict(marker="o", color="green", s=14, zorder=2),
    "esdf-selected": dict(marker="o", facecolors="none", edgecolors="red", s=70, zorder=3),
    "cas-selected": dict(marker="o", color="cyan", s=14, zorder=3),
    "both": dict(marker="o", color="cyan", edgecolors="red", linewidths=1.2, s=70, zorder=4),
    "ground-truth": dict(marker="s", color="black", s=60, zorder=5),
    "consensus-full": dict(marker="o", color="magenta", s=40, zorder=5),
    "consensus-cas": dict(marker="p", color="black", s=70, zorder=5),
    "consensus-esdf": dict(marker="*", color="blue", s=110, zorder=6),
}


def new_figure(width=6.0, height=None):
    golden = (math.sqrt(5) - 1.0) / 2.0
    fig, ax = plt.subplots(figsize=(width, height or width * golden))
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    return fig, ax


def save(fig, path) -> Path:
    path = Path(path)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata=SVG_METADATA)
    plt.close(fig)
    return path


def plot_sweep(curves: dict[str, tuple[list[int], list[float]]], path, title: str = ""):
    """AR against the number of selected partitions, one line per criterion."""
    fig, ax = new_figure()
    for name, (ks, ars) in curves.items():
        ax.plot(ks, ars, label=name, color=CRITERION_COLORS.get(name), lw=1.5)
    ax.set_xlabel("selected partitions k")
    ax.set_ylabel("adjusted Rand index")
    if title:
        ax.set_title(title)
    ax.legend(frameon=False)
    return save(fig, path)


def plot_summary(cells: dict[str, dict[str, float]], path, title: str = ""):
    """Grouped bars of max-over-k AR: groups are consensus methods, bars selections."""
    fig, ax = new_figure(7.0)
    methods = list(cells)
    selections = sorted({s for m in cells.values() for s in m})
    width = 0.8 / max(len(selections), 1)
    for j, sel in enumerate(selections):
        xs = [i + j * width for i in range(len(methods))]
        ys = [cells[m].get(sel, float("nan")) for m in methods]
        ax.bar(xs, ys, width=width, label=sel)
    ax.set_xticks([i + 0.4 - width / 2 for i in range(len(methods))])
    ax.set_xticklabels(methods)
    ax.set_ylabel("max AR over k")
    if title:
        ax.set_title(title)
    ax.legend(frameon=False, fontsize=8)
    return save(fig, path)


def plot_embedding(xy, roles, path, dims=(0, 1), title: str = ""):
    fig, ax = new_figure(6.0, 5.0)
    for role, style in ROLE_STYLE.items():
        mask = [r == role for r in roles]
        if any(mask):
            pts = xy[mask]
            ax.scatter(pts[:, 0], pts[:, 1], label=role, **style)
    ax.set_xlabel(f"dimension {dims[0] + 1}")
    ax.set_ylabel(f"dimension {dims[1] + 1}")
    if title:
        ax.set_title(title)
    ax.legend(frameon=False, fontsize=7, loc="best")
    return save(fig, path)

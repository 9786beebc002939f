"""Hasse-diagram rendering and report figures.

Figures follow the same convention as the DOT export: join-irreducible
elements are drawn with doubled circles.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .lattices import FiniteLattice  # noqa: E402

__all__ = ["hasse_figure", "runtime_figure"]


def _layers(L: FiniteLattice) -> list[int]:
    """Height of each element: longest cover chain from the bottom."""
    cov = L.covers()
    height = [0] * L.size
    order = L.linear_extension()
    for j in order:
        below = np.flatnonzero(cov[:, j])
        if below.size:
            height[j] = 1 + max(height[int(i)] for i in below)
    return height


def _positions(L: FiniteLattice) -> dict[int, tuple[float, float]]:
    height = _layers(L)
    layers: dict[int, list[int]] = {}
    for i, h in enumerate(height):
        layers.setdefault(h, []).append(i)
    pos: dict[int, tuple[float, float]] = {}
    for h in sorted(layers):
        row = layers[h]
        if h > 0:
            cov = L.covers()
            # barycenter of lower covers keeps edges short
            def key(i):
                below = np.flatnonzero(cov[:, i])
                if below.size == 0:
                    return 0.0
                return float(np.mean([pos[int(b)][0] for b in below]))
            row = sorted(row, key=key)
        k = len(row)
        for idx, i in enumerate(row):
            pos[i] = (idx - (k - 1) / 2.0, float(h))
    return pos


def hasse_figure(L: FiniteLattice, path: str, title: str | None = None,
                 max_labels: int = 40) -> str:
    """Render the Hasse diagram to an image file; returns the path."""
    pos = _positions(L)
    cov = L.covers()
    ji = set(L.join_irreducibles())
    fig, ax = plt.subplots(figsize=(max(4.0, L.size ** 0.5 * 1.2),
                                    max(3.0, (max(p[1] for p in pos.values()) + 1))))
    for i, j in zip(*np.nonzero(cov)):
        (x1, y1), (x2, y2) = pos[int(i)], pos[int(j)]
        ax.plot([x1, x2], [y1, y2], color="0.55", lw=0.9, zorder=1)
    xs = [pos[i][0] for i in range(L.size)]
    ys = [pos[i][1] for i in range(L.size)]
    ax.scatter(xs, ys, s=160, facecolor="white", edgecolor="black", zorder=2)
    ji_idx = sorted(ji)
    if ji_idx:
        ax.scatter([pos[i][0] for i in ji_idx], [pos[i][1] for i in ji_idx],
                   s=300, facecolor="none", edgecolor="black", zorder=2)
    if L.size <= max_labels:
        for i in range(L.size):
            ax.annotate(L.labels[i], pos[i], ha="center", va="center",
                        fontsize=7, zorder=3)
    if title:
        ax.set_title(title)
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def runtime_figure(results, path: str) -> str:
    """Horizontal bar chart of per-claim runtimes for the report."""
    ids = [r.claim_id for r in results]
    secs = [r.seconds for r in results]
    colors = ["#2a7e43" if r.passed else "#b3412c" for r in results]
    fig, ax = plt.subplots(figsize=(7, 0.4 * len(ids) + 1.2))
    ax.barh(range(len(ids)), secs, color=colors)
    ax.set_yticks(range(len(ids)), ids, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("seconds")
    ax.set_title("verification runtimes")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path

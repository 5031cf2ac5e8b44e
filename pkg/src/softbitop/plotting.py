"""Figures of finite topologies, drawn as their specialization preorder.

A point x sits at height |N(x)|; an edge joins x down to y when y lies in
N(x) and nothing strictly between them does.  Points with the same minimal
neighbourhood are indistinguishable and share a row.
"""

from __future__ import annotations

import os
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .core_sets import bits, popcount  # noqa: E402
from .finite_topology import FiniteTopology  # noqa: E402


def _cover_edges(tau: FiniteTopology) -> list[tuple[int, int]]:
    N = tau.nbhd

    def strictly_below(a, b):
        return N[a] != N[b] and N[a] & ~N[b] == 0

    edges = []
    for x in range(tau.carrier_size):
        below = [y for y in bits(N[x]) if strictly_below(y, x)]
        for y in below:
            if not any(strictly_below(y, z) for z in below):
                edges.append((x, y))
    return edges


def plot_topology(tau: FiniteTopology, labels: Sequence[str], path: str, title: str = "") -> str:
    """Write a PNG of the specialization preorder of ``tau`` and return its path."""
    heights = [popcount(n) for n in tau.nbhd]
    rows: dict[int, list[int]] = {}
    for x in range(tau.carrier_size):
        rows.setdefault(heights[x], []).append(x)
    pos = {}
    for h, pts in rows.items():
        for k, x in enumerate(pts):
            pos[x] = (k - (len(pts) - 1) / 2, h)

    fig, ax = plt.subplots(figsize=(max(3.0, 0.9 * max(len(p) for p in rows.values())), 3.0))
    for x, y in _cover_edges(tau):
        (x0, y0), (x1, y1) = pos[x], pos[y]
        ax.plot([x0, x1], [y0, y1], color="0.6", lw=1, zorder=1)
    for x, (px, py) in pos.items():
        ax.scatter([px], [py], s=220, color="white", edgecolors="black", zorder=2)
        ax.annotate(labels[x], (px, py), ha="center", va="center", fontsize=7, zorder=3)
    ax.set_title(title or f"{tau.carrier_size} points", fontsize=9)
    ax.set_ylabel("|N(x)|")
    ax.set_xticks([])
    ax.margins(0.25)
    fig.tight_layout()
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    fig.savefig(path, dpi=100, metadata={"Software": None})
    plt.close(fig)
    return path

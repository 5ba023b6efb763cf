"""Figures written by ``reproduce --figures``: sign-matrix heatmaps and switched subgraphs."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.colors import ListedColormap  # noqa: E402

from .hadgraph import vertex_names  # noqa: E402
from .loopgraph import LoopGraph  # noqa: E402
from .signmatrix import SignMatrix  # noqa: E402

SIGN_CMAP = ListedColormap(["#2b2b2b", "#f2f2f2"])


def _matrix_axes(ax, M: SignMatrix, title: str):
    ax.imshow(M.array, cmap=SIGN_CMAP, vmin=-1, vmax=1, interpolation="nearest")
    ax.set_title(title, fontsize=9)
    n_rows, n_cols = M.shape
    step = 1 if max(n_rows, n_cols) <= 20 else 5
    ax.set_xticks(range(0, n_cols, step), [str(c + 1) for c in range(0, n_cols, step)], fontsize=6)
    ax.set_yticks(range(0, n_rows, step), [str(r + 1) for r in range(0, n_rows, step)], fontsize=6)


def switch_heatmaps(before: SignMatrix, after: SignMatrix, path, title: str = "") -> Path:
    """Three panels: original, switched, and the entries that changed sign."""
    path = Path(path)
    fig, axes = plt.subplots(1, 3, figsize=(9, 3.3))
    _matrix_axes(axes[0], before, "before")
    _matrix_axes(axes[1], after, "after")
    changed = before.array != after.array
    axes[2].imshow(changed, cmap=ListedColormap(["#f2f2f2", "#c0392b"]), vmin=0, vmax=1, interpolation="nearest")
    axes[2].set_title(f"negated entries ({int(changed.sum())})", fontsize=9)
    axes[2].set_xticks([])
    axes[2].set_yticks([])
    if title:
        fig.suptitle(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _bipartite_positions(vertices, n: int) -> dict[int, tuple[float, float]]:
    # row-side vertices on the left, column-side on the right
    left = [v for v in vertices if v < 2 * n]
    right = [v for v in vertices if v >= 2 * n]
    pos = {}
    for side, x in ((left, 0.0), (right, 1.0)):
        for k, v in enumerate(side):
            pos[v] = (x, -k / max(len(side) - 1, 1))
    return pos


def switched_subgraph(before: LoopGraph, after: LoopGraph, vertices, path, title: str = "") -> Path:
    """Draw the subgraph on ``vertices`` before and after switching, changed edges highlighted."""
    path = Path(path)
    vertices = sorted(int(v) for v in vertices)
    n = before.n // 4
    names = vertex_names(n)
    pos = _bipartite_positions(vertices, n)
    fig, axes = plt.subplots(1, 2, figsize=(7, 5))
    sub_b = before.adjacency[np.ix_(vertices, vertices)]
    sub_a = after.adjacency[np.ix_(vertices, vertices)]
    for ax, sub, other, label in ((axes[0], sub_b, sub_a, "before"), (axes[1], sub_a, sub_b, "after")):
        for i, u in enumerate(vertices):
            for j in range(i + 1, len(vertices)):
                if sub[i, j]:
                    w = vertices[j]
                    colour = "#2b2b2b" if other[i, j] else "#c0392b"
                    ax.plot(*zip(pos[u], pos[w]), color=colour, lw=0.8, zorder=1)
        xs, ys = zip(*(pos[v] for v in vertices))
        looped = [before.loops[v] for v in vertices]
        ax.scatter(xs, ys, s=60, c=["#2e86c1" if lp else "#f5b041" for lp in looped], zorder=2)
        for v in vertices:
            x, y = pos[v]
            ax.annotate(names[v], (x, y), xytext=(-22 if x == 0 else 6, -3), textcoords="offset points", fontsize=7)
        ax.set_title(label, fontsize=9)
        ax.axis("off")
    if title:
        fig.suptitle(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path

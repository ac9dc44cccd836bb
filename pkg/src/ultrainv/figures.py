"""Matplotlib renderings saved next to the JSON reports.

All figures are written to files (Agg backend); nothing opens a window.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path


def support_pattern_figure(space, path, title):
    """Heatmap of the union support of a space's basis matrices."""
    rows, cols = space.cod_dim, space.dom_dim
    grid = [[0] * cols for _ in range(rows)]
    for mat in space.basis_matrices:
        for i in range(rows):
            for j in range(cols):
                if mat.data[i][j]:
                    grid[i][j] = 1
    fig, ax = plt.subplots(figsize=(3.2, 3.2))
    ax.imshow(grid, cmap="Greys", vmin=0, vmax=1)
    ax.set_title(title, fontsize=9)
    ax.set_xticks(range(cols))
    ax.set_yticks(range(rows))
    for i in range(rows):
        for j in range(cols):
            if grid[i][j]:
                ax.text(j, i, "*", ha="center", va="center", color="white")
    return _save(fig, path)


def dimension_bar_figure(dims, path, title):
    """Bar chart of named dimensions from an analysis run."""
    names = list(dims)
    values = [dims[k] for k in names]
    fig, ax = plt.subplots(figsize=(max(3.5, 0.9 * len(names)), 2.8))
    ax.bar(range(len(names)), values, color="#4878a8")
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("dimension")
    ax.set_title(title, fontsize=9)
    for x, v in enumerate(values):
        ax.text(x, v, str(v), ha="center", va="bottom", fontsize=8)
    return _save(fig, path)


def lattice_figure(lattice, path, title):
    """Hasse-style diagram: members by dimension level, covers as edges."""
    members = lattice.members
    levels = {}
    for idx, m in enumerate(members):
        levels.setdefault(m.subspace.dim, []).append(idx)
    pos = {}
    for dim, idxs in sorted(levels.items()):
        for k, idx in enumerate(idxs):
            pos[idx] = (k - (len(idxs) - 1) / 2.0, dim)
    fig, ax = plt.subplots(figsize=(4.5, 3.5))
    for i, mi in enumerate(members):
        for j, mj in enumerate(members):
            if _covers(mi.exponents, mj.exponents):
                (x1, y1), (x2, y2) = pos[i], pos[j]
                ax.plot([x1, x2], [y1, y2], color="#999999", lw=1, zorder=1)
    for idx, m in enumerate(members):
        x, y = pos[idx]
        ax.scatter([x], [y], s=260, color="#4878a8", zorder=2)
        label = ",".join(str(e) for e in m.exponents)
        ax.text(x, y, label, ha="center", va="center", color="white",
                fontsize=7, zorder=3)
    ax.set_ylabel("member dimension")
    ax.set_xticks([])
    ax.set_title(title, fontsize=9)
    return _save(fig, path)


def _covers(lo, hi):
    if len(lo) != len(hi):
        return False
    diff = [b - a for a, b in zip(lo, hi)]
    return all(d >= 0 for d in diff) and sum(diff) == 1


def fuzz_summary_figure(summary, path, title):
    """Cases and checks per generator kind."""
    kinds = [e["kind"] for e in summary]
    checks = [e["checks"] for e in summary]
    fig, ax = plt.subplots(figsize=(max(4.0, 0.8 * len(kinds)), 3.0))
    ax.bar(range(len(kinds)), checks, color="#55a868")
    ax.set_xticks(range(len(kinds)))
    ax.set_xticklabels(kinds, rotation=35, ha="right", fontsize=7)
    ax.set_ylabel("checks passed")
    ax.set_title(title, fontsize=9)
    return _save(fig, path)


def figure_path(directory, name):
    os.makedirs(directory, exist_ok=True)
    return os.path.join(directory, name)

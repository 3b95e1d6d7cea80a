"""SVG figures: prime scatter plots, a triangulation/MST overlay and moat curves.

Everything renders through the Agg canvas straight to SVG files.  The SVG
writer is given a fixed hash salt and no date so identical inputs give
identical files.
"""
from __future__ import annotations

import math
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.collections import LineCollection  # noqa: E402

from .bench import kruskal_edges  # noqa: E402
from .delaunay import triangulate  # noqa: E402
from .lattice import Sector, embed_arrays, generate_sector_primes  # noqa: E402
from .moats import MoatRecord  # noqa: E402
from .primality import ring_prime_mask  # noqa: E402
from .quadring import QuadField  # noqa: E402

_SERIES_COLORS = {-1: "tab:blue", -2: "tab:red", -3: "tab:orange", -7: "tab:green"}


def _save(fig, path, title: str | None = None) -> None:
    with matplotlib.rc_context({"svg.hashsalt": "quadmoat", "svg.fonttype": "none"}):
        meta = {"Date": None}
        if title:
            meta["Title"] = title
        fig.savefig(path, format="svg", metadata=meta)
    plt.close(fig)


def box_primes(f: QuadField, C: int) -> tuple[np.ndarray, np.ndarray]:
    """Embedded (x, y) of every ring prime with |x| <= C and |y| <= C."""
    rt = math.sqrt(f.abs_d)
    scale = 2 if f.half_integer else 1
    bmax = int(scale * C / rt)
    b = np.arange(-bmax, bmax + 1, dtype=np.int64)
    amax = C + bmax + 1
    a = np.arange(-amax, amax + 1, dtype=np.int64)
    A, B = np.meshgrid(a, b)
    A, B = A.ravel(), B.ravel()
    u, v = embed_arrays(f, A, B)
    x, y = u / 2, v * rt / 2
    keep = (np.abs(x) <= C) & (np.abs(y) <= C)
    A, B, x, y = A[keep], B[keep], x[keep], y[keep]
    mask = ring_prime_mask(f, A, B)
    return x[mask], y[mask]


def plot_primes(f: QuadField, C: int, path, title: str | None = None) -> int:
    """Scatter of the primes in the square [-C, C]**2; returns the point count."""
    x, y = box_primes(f, C)
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.scatter(x, y, s=max(1.0, 4000.0 / max(C * C, 1)), c="black", marker="s",
               linewidths=0)
    ax.set_xlim(-C - 0.5, C + 0.5)
    ax.set_ylim(-C - 0.5, C + 0.5)
    ax.set_aspect("equal")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_title(title or f"Primes in the ring of integers of {f}")
    _save(fig, path, title)
    return len(x)


def plot_emst(f: QuadField, C: int, path, title: str | None = None) -> tuple[int, int]:
    """Triangulation edges dashed with the minimum spanning tree drawn solid.

    Returns (number of triangulation edges, number of tree edges).
    """
    primes = generate_sector_primes(Sector(f, C), padded=False)
    if len(primes) == 0:
        raise ValueError(f"no primes in the sector for C={C}")
    tri = triangulate((primes.u, primes.v), f.d)
    rt = math.sqrt(f.abs_d)
    xy = np.column_stack([primes.u / 2, primes.v * rt / 2])
    all_seg = np.stack([xy[tri.edge_i], xy[tri.edge_j]], axis=1)
    keep = kruskal_edges(len(primes), tri.edge_i, tri.edge_j, tri.edge_w)
    fig, ax = plt.subplots(figsize=(7, 7))
    ax.add_collection(LineCollection(all_seg, colors="0.6", linestyles="dashed",
                                     linewidths=0.6))
    ax.add_collection(LineCollection(all_seg[keep], colors="black", linewidths=1.2))
    ax.scatter(xy[:, 0], xy[:, 1], s=8, c="black", zorder=3)
    ax.autoscale()
    ax.set_aspect("equal")
    ax.set_title(title or f"Euclidean MST in the primes of {f}")
    _save(fig, path, title)
    return len(tri.edge_w), len(keep)


def plot_moat_curves(series: Mapping[int, Sequence[MoatRecord]], path,
                     title: str | None = None) -> None:
    """Step bound k against farthest distance reachable, one line per field."""
    fig, ax = plt.subplots(figsize=(7, 5))
    for d in sorted(series, reverse=True):
        recs = series[d]
        ks = [r.k for r in recs]
        dist = [r.distance for r in recs]
        ax.plot(ks, dist, marker="s", markerfacecolor="none",
                color=_SERIES_COLORS.get(d), label=f"d={d}")
    ax.set_xlabel("Step size bound k")
    ax.set_ylabel("Farthest distance reachable")
    ax.set_xlim(left=0)
    ax.set_ylim(bottom=0)
    ax.yaxis.grid(True, linestyle="dashed")
    ax.legend(loc="upper left")
    ax.set_title(title or "Moats in imaginary quadratic fields")
    _save(fig, path, title)

"""Timing of the Delaunay MST pipeline against Kruskal on the complete graph.

Both pipelines run on the same prime sets: the n lowest-norm primes of an
unpadded sector, for each requested n.  The complete-graph baseline needs
O(n**2) memory, so it only co-runs up to ``complete_limit`` points; wherever
both run, their sorted MST weight sequences must agree exactly.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field as dc_field

import numpy as np

from .delaunay import triangulate
from .lattice import Sector, SectorPrimes, generate_sector_primes
from .quadring import QuadField

DEFAULT_SIZES = (500, 1000, 2000, 3000, 10_000, 20_000, 40_000, 70_000, 100_000)


def kruskal_edges(n: int, ei, ej, ew) -> np.ndarray:
    """Positions, in weight order, of the edges Kruskal keeps (a spanning forest)."""
    ew = np.asarray(ew, dtype=np.int64)
    order = np.argsort(ew, kind="stable")
    I = np.asarray(ei)[order].tolist()
    J = np.asarray(ej)[order].tolist()
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    kept = []
    for pos, (i, j) in enumerate(zip(I, J)):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            kept.append(pos)
            if len(kept) == n - 1:
                break
    return order[np.array(kept, dtype=np.int64)]


def kruskal_weights(n: int, ei, ej, ew) -> np.ndarray:
    """Sorted MST (spanning forest) edge weights of an edge list."""
    ew = np.asarray(ew, dtype=np.int64)
    return ew[kruskal_edges(n, ei, ej, ew)]


def delaunay_mst_weights(d: int, u, v) -> np.ndarray:
    u = np.asarray(u, dtype=np.int64)
    if len(u) < 2:
        return np.zeros(0, dtype=np.int64)
    tri = triangulate((u, v), d)
    return kruskal_weights(len(u), tri.edge_i, tri.edge_j, tri.edge_w)


def complete_mst_weights(d: int, u, v) -> np.ndarray:
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    n = len(u)
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    i, j = np.triu_indices(n, 1)
    du = u[i] - u[j]
    dv = v[i] - v[j]
    w = (du * du - d * dv * dv) // 4
    return kruskal_weights(n, i, j, w)


def prime_prefix(f: QuadField, n: int, C0: int = 64) -> SectorPrimes:
    """The n lowest-norm primes of an unpadded sector, growing C as needed."""
    C = C0
    while True:
        primes = generate_sector_primes(Sector(f, C), padded=False)
        # the prefix is a true norm ball only if it stays inside the C lines
        if len(primes) >= n and (n == 0 or int(primes.norm[n - 1]) <= C * C):
            return primes.subset(np.arange(n))
        C *= 2


@dataclass
class BenchRow:
    n: int
    t_delaunay: float
    t_complete: float | None
    total_weight: int
    agree: bool | None


@dataclass
class BenchReport:
    d: int
    rows: list[BenchRow] = dc_field(default_factory=list)

    def slope(self, n_min: int = 10_000, n_max: int = 100_000) -> float:
        """Least-squares slope of log t_delaunay against log n over [n_min, n_max]."""
        pts = [(r.n, r.t_delaunay) for r in self.rows if n_min <= r.n <= n_max]
        if len(pts) < 2:
            raise ValueError("need at least two sizes in the fit range")
        x = np.log([p[0] for p in pts])
        y = np.log([p[1] for p in pts])
        return float(np.polyfit(x, y, 1)[0])

    def largest_corun(self) -> BenchRow | None:
        both = [r for r in self.rows if r.t_complete is not None]
        return max(both, key=lambda r: r.n) if both else None

    def to_csv(self, header: str | None = None) -> str:
        lines = [header] if header else []
        lines.append("n_primes,t_delaunay,t_complete,total_weight,weights_agree")
        for r in self.rows:
            tc = "" if r.t_complete is None else f"{r.t_complete:.6f}"
            ag = "" if r.agree is None else str(r.agree).lower()
            lines.append(f"{r.n},{r.t_delaunay:.6f},{tc},{r.total_weight},{ag}")
        return "\n".join(lines) + "\n"


def _timed(fn, repeat: int):
    best, out = math.inf, None
    for _ in range(max(1, repeat)):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def run_bench(f: QuadField, sizes=DEFAULT_SIZES, complete_limit: int = 3000,
              repeat: int = 1) -> BenchReport:
    sizes = sorted(set(int(n) for n in sizes))
    if not sizes or sizes[0] < 0:
        raise ValueError("sizes must be non-negative")
    pool = prime_prefix(f, sizes[-1])
    report = BenchReport(f.d)
    for n in sizes:
        u, v = pool.u[:n], pool.v[:n]
        td, wd = _timed(lambda: delaunay_mst_weights(f.d, u, v), repeat)
        tc, agree = None, None
        if n <= complete_limit:
            tc, wc = _timed(lambda: complete_mst_weights(f.d, u, v), repeat)
            agree = bool(np.array_equal(wd, wc))
        report.rows.append(BenchRow(n, td, tc, int(wd.sum()), agree))
    return report

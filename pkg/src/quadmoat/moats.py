"""Moat enumeration by Kruskal's algorithm over Delaunay edges.

Edges are swept in increasing squared length.  Every time a batch of
equal-length edges grows the component of the starting prime, the
component as it stood before that batch is a finished moat record: its
threshold is the length at which it last grew, and its farthest member is
the frontier reachable with steps of at most that length.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field as dc_field, replace
from typing import Iterator

import numpy as np

from .delaunay import Triangulation, triangulate
from .lattice import (Sector, SectorPrimes, canonical, clears_boundary,
                      generate_sector_primes)
from .quadring import QuadField, RingElement, format_element, norm
from .unionfind import UnionFind

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MoatRecord:
    k_squared: int
    farthest_prime: RingElement
    farthest_norm: int
    component_size: int
    validated: bool = False
    C_used: int = 0
    # largest step weight that grows the component next; None if it never grows again
    next_growth: int | None = None
    rightmost_u: int = 0
    topmost_v: int = 0

    @property
    def k(self) -> float:
        return math.sqrt(self.k_squared)

    @property
    def distance(self) -> float:
        return math.sqrt(self.farthest_norm)

    def k_label(self) -> str:
        r = math.isqrt(self.k_squared)
        return str(r) if r * r == self.k_squared else f"sqrt({self.k_squared})"


@dataclass
class Sweep:
    """Outcome of one Kruskal sweep from the start prime.

    ``growths`` has one snapshot per edge weight that enlarged the start
    component (the last one has ``next_growth=None``); ``records`` collapses
    consecutive growths that kept the same frontier into one row, keeping the
    smallest k, and only holds rows whose frontier was later surpassed.
    """

    growths: list[MoatRecord]
    records: list[MoatRecord]
    start_index: int


def _sorted_edges(tri: Triangulation):
    order = np.lexsort((tri.edge_j, tri.edge_i, tri.edge_w))
    return (tri.edge_i[order].tolist(), tri.edge_j[order].tolist(),
            tri.edge_w[order].tolist())


def _collapse(growths: list[MoatRecord], start_norm: int) -> list[MoatRecord]:
    rows: list[MoatRecord] = []
    current: MoatRecord | None = None
    frontier = start_norm
    for g in growths:
        if g.farthest_norm > frontier:
            if current is not None:
                rows.append(current)
            current = g
            frontier = g.farthest_norm
    # the final row is open: nothing beyond it has been seen yet
    return rows


def sweep(tri: Triangulation, primes: SectorPrimes, start_index: int) -> Sweep:
    n = len(primes)
    if n == 0:
        raise ValueError("empty prime list")
    if not 0 <= start_index < n:
        raise IndexError(f"start_index {start_index} out of range for {n} primes")
    f = primes.field
    norms = primes.norm.tolist()
    U, V = primes.u.tolist(), primes.v.tolist()
    uf = UnionFind(norms, U, V)
    ei, ej, ew = _sorted_edges(tri)

    def snapshot(k2):
        far, right, top = uf.extrema(start_index)
        return MoatRecord(
            k_squared=k2,
            farthest_prime=canonical(f, primes.element(far)),
            farthest_norm=norms[far],
            component_size=uf.component_size(start_index),
            C_used=primes.sector.C,
            rightmost_u=U[right],
            topmost_v=V[top],
        )

    growths: list[MoatRecord] = []
    m = len(ew)
    pos = 0
    size = 1
    while pos < m:
        w = ew[pos]
        end = pos
        while end < m and ew[end] == w:
            uf.union(ei[end], ej[end])
            end += 1
        pos = end
        new_size = uf.component_size(start_index)
        if new_size > size:
            size = new_size
            if growths:
                growths[-1] = replace(growths[-1], next_growth=w)
            growths.append(snapshot(w))
    return Sweep(growths, _collapse(growths, norms[start_index]), start_index)


def start_prime_index(primes: SectorPrimes) -> int:
    """Lowest-norm prime inside the unpadded sector, ties by (b, a)."""
    inside = primes.sector.contains(primes.u, primes.v, padded=False)
    idx = np.nonzero(inside)[0]
    if len(idx) == 0:
        raise ValueError("no primes inside the sector")
    best = min(idx.tolist(),
               key=lambda i: (int(primes.norm[i]), int(primes.b[i]), int(primes.a[i])))
    return best


def enumerate_moats(tri: Triangulation, primes: SectorPrimes,
                    start_index: int | None = None) -> list[MoatRecord]:
    """Unvalidated moat records in increasing order of k."""
    if start_index is None:
        start_index = start_prime_index(primes)
    return sweep(tri, primes, start_index).records


def validate_moat(rec: MoatRecord, s: Sector) -> MoatRecord:
    """Mark ``rec`` validated iff its component stays more than k from the C boundaries."""
    ok = clears_boundary(s, rec.rightmost_u, rec.topmost_v, rec.k_squared)
    return replace(rec, validated=ok, C_used=s.C)


@dataclass
class MoatSearch:
    """Result of :func:`find_moats_up_to`.

    ``complete`` is False when the boundary ceiling stopped the search; the
    records then form the validated prefix and nothing is certified beyond
    ``C_used``.
    """

    d: int
    k_max_squared: int
    records: list[MoatRecord]
    complete: bool
    C_used: int
    n_primes: int = 0
    history: list[tuple[int, int]] = dc_field(default_factory=list)

    def __iter__(self) -> Iterator[MoatRecord]:
        return iter(self.records)

    def __len__(self):
        return len(self.records)

    def __getitem__(self, i):
        return self.records[i]


def _run(f: QuadField, C: int, pad: float):
    s = Sector(f, C, pad)
    primes = generate_sector_primes(s)
    tri = triangulate((primes.u, primes.v), f.d)
    start = start_prime_index(primes)
    return s, primes, tri, sweep(tri, primes, start)


def _closes(s: Sector, primes: SectorPrimes, sw: Sweep, k_max_squared: int) -> bool:
    """Is the start component at threshold k_max certified against the boundary?"""
    below = [g for g in sw.growths if g.k_squared <= k_max_squared]
    if below:
        last = below[-1]
        if last.next_growth is None:
            return False
        return clears_boundary(s, last.rightmost_u, last.topmost_v, k_max_squared)
    if not sw.growths:
        return False
    i = sw.start_index
    return clears_boundary(s, int(primes.u[i]), int(primes.v[i]), k_max_squared)


def find_moats_up_to(f: QuadField, k_max_squared: int, C0: int = 64,
                     C_ceiling: int = 1 << 14) -> MoatSearch:
    """All moats with k**2 <= k_max_squared, each certified against the boundary.

    The boundary starts at C0 and doubles until every record is validated
    and the component at threshold k_max clears the boundary by k_max.
    """
    if C0 < 2:
        raise ValueError("initial boundary must be at least 2")
    if k_max_squared <= 0:
        raise ValueError("k_max must be positive")
    if C0 > C_ceiling:
        raise ValueError("initial boundary exceeds the ceiling")
    pad = math.sqrt(k_max_squared)
    C = C0
    history = []
    best: list[MoatRecord] = []
    n_primes = 0
    while C <= C_ceiling:
        s, primes, tri, sw = _run(f, C, pad)
        n_primes = len(primes)
        recs = [validate_moat(r, s) for r in sw.records if r.k_squared <= k_max_squared]
        prefix = []
        for r in recs:
            if not r.validated:
                break
            prefix.append(r)
        history.append((C, len(primes)))
        log.info("d=%d C=%d primes=%d records=%d validated=%d", f.d, C, len(primes),
                 len(recs), len(prefix))
        if len(prefix) == len(recs) and _closes(s, primes, sw, k_max_squared):
            return MoatSearch(f.d, k_max_squared, prefix, True, C, n_primes, history)
        best = prefix
        C *= 2
    return MoatSearch(f.d, k_max_squared, best, False, C // 2, n_primes, history)


def reachable_frontier(f: QuadField, k_squared: int, C: int = 64,
                       C_ceiling: int = 1 << 14) -> tuple[RingElement, float]:
    """Farthest prime reachable from the start with steps of squared length <= k_squared."""
    C = max(int(C), 2)
    while C <= C_ceiling:
        s, primes, tri, sw = _run(f, C, math.sqrt(k_squared))
        uf = UnionFind(primes.norm.tolist(), primes.u.tolist(), primes.v.tolist())
        keep = tri.edge_w <= k_squared
        for i, j in zip(tri.edge_i[keep].tolist(), tri.edge_j[keep].tolist()):
            uf.union(i, j)
        far, right, top = uf.extrema(sw.start_index)
        if clears_boundary(s, int(primes.u[right]), int(primes.v[top]), k_squared):
            e = canonical(f, primes.element(far))
            return e, math.sqrt(norm(f, e))
        C *= 2
    raise RuntimeError(f"frontier not certified below boundary ceiling {C_ceiling}")


def record_to_dict(f: QuadField, r: MoatRecord) -> dict:
    return {
        "k_squared": r.k_squared,
        "k": round(r.k, 3),
        "farthest": {"a": r.farthest_prime.a, "b": r.farthest_prime.b,
                     "display": format_element(f, r.farthest_prime)},
        "distance": round(r.distance, 3),
        "component_size": r.component_size,
        "validated": r.validated,
        "C_used": r.C_used,
    }

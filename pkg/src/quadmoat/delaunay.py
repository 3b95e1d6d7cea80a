"""Incremental Delaunay triangulation (Bowyer-Watson) with exact predicates.

The hull is closed off by ghost triangles sharing a vertex at infinity, so
no bounding super-triangle is needed.  Points are inserted along a Hilbert
curve and located by a visibility walk from the previous insertion.  Ties
between cocircular points are broken by the symbolic perturbation in
:func:`incircle_perturbed`, which makes the output independent of the
insertion order.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .predicates import incircle_perturbed

GHOST = -1


class WeightedEdge(NamedTuple):
    i: int
    j: int
    w: int


@dataclass
class Triangulation:
    """Triangles (CCW index triples) and the deduplicated, weighted edge set."""

    d: int
    u: np.ndarray
    v: np.ndarray
    triangles: np.ndarray  # (T, 3)
    edge_i: np.ndarray
    edge_j: np.ndarray
    edge_w: np.ndarray

    @property
    def n_points(self) -> int:
        return len(self.u)

    @property
    def edges(self) -> list[WeightedEdge]:
        return [WeightedEdge(i, j, w) for i, j, w in
                zip(self.edge_i.tolist(), self.edge_j.tolist(), self.edge_w.tolist())]

    def to_csv(self) -> str:
        lines = ["i,j,w"]
        lines += [f"{i},{j},{w}" for i, j, w in
                  zip(self.edge_i.tolist(), self.edge_j.tolist(), self.edge_w.tolist())]
        return "\n".join(lines) + "\n"


def hilbert_order(u, v, bits: int = 16) -> np.ndarray:
    """Permutation sorting points along a Hilbert curve over their bounding box."""
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    if len(u) == 0:
        return np.zeros(0, dtype=np.int64)
    span = max(int(u.max() - u.min()), int(v.max() - v.min()), 1)
    n = 1 << bits
    x = ((u - u.min()) * (n - 1) // span).astype(np.int64)
    y = ((v - v.min()) * (n - 1) // span).astype(np.int64)
    h = np.zeros(len(u), dtype=np.int64)
    s = n >> 1
    while s > 0:
        rx = (x & s) > 0
        ry = (y & s) > 0
        h += s * s * ((3 * rx) ^ ry)
        # rotate the quadrant
        flip = ~ry
        swap_x = np.where(flip & rx, n - 1 - x, x)
        swap_y = np.where(flip & rx, n - 1 - y, y)
        x = np.where(flip, swap_y, x)
        y = np.where(flip, swap_x, y)
        s >>= 1
    return np.lexsort((np.arange(len(u)), h))


class _Mesh:
    """Flat-list triangle store: tv[3t+k] vertices, tn[3t+k] neighbour opposite vertex k."""

    def __init__(self, U: Sequence[int], V: Sequence[int], D: int):
        self.U = U
        self.V = V
        self.D = D
        self.tv: list[int] = []
        self.tn: list[int] = []
        self.free: list[int] = []
        self.last = 0

    def new_triangle(self, a, b, c) -> int:
        if self.free:
            t = self.free.pop()
            self.tv[3 * t:3 * t + 3] = (a, b, c)
            self.tn[3 * t:3 * t + 3] = (-1, -1, -1)
        else:
            t = len(self.tv) // 3
            self.tv += (a, b, c)
            self.tn += (-1, -1, -1)
        return t

    def kill(self, t):
        self.tv[3 * t] = -2
        self.free.append(t)

    def start(self, a, b, c):
        U, V = self.U, self.V
        if (U[b] - U[a]) * (V[c] - V[a]) - (V[b] - V[a]) * (U[c] - U[a]) < 0:
            b, c = c, b
        tris = [self.new_triangle(a, b, c),
                self.new_triangle(b, a, GHOST),
                self.new_triangle(c, b, GHOST),
                self.new_triangle(a, c, GHOST)]
        edges = {}
        tv, tn = self.tv, self.tn
        for t in tris:
            for k in range(3):
                x, y = tv[3 * t + (k + 1) % 3], tv[3 * t + (k + 2) % 3]
                edges[(x, y)] = (t, k)
        for (x, y), (t, k) in edges.items():
            tn[3 * t + k] = edges[(y, x)][0]
        self.last = tris[0]

    def _in_conflict(self, t, p) -> bool:
        tv = self.tv
        a, b, c = tv[3 * t], tv[3 * t + 1], tv[3 * t + 2]
        if a != GHOST and b != GHOST and c != GHOST:
            return incircle_perturbed(self.D, a, b, c, p, self.U, self.V) > 0
        # rotate so the real hull edge is x -> y, outside on its left
        if a == GHOST:
            x, y = b, c
        elif b == GHOST:
            x, y = c, a
        else:
            x, y = a, b
        U, V = self.U, self.V
        xu, xv, yu, yv, pu, pv = U[x], V[x], U[y], V[y], U[p], V[p]
        o = (yu - xu) * (pv - xv) - (yv - xv) * (pu - xu)
        if o != 0:
            return o > 0
        # collinear with the hull edge: conflict only strictly between x and y
        return (pu - xu) * (yu - xu) + (pv - xv) * (yv - xv) > 0 and \
               (pu - yu) * (xu - yu) + (pv - yv) * (xv - yv) > 0

    def locate(self, p) -> int:
        """Visibility walk to a triangle in conflict with p."""
        tv, tn, U, V = self.tv, self.tn, self.U, self.V
        pu, pv = U[p], V[p]
        t = self.last
        if tv[3 * t] == -2:
            t = next(i for i in range(len(tv) // 3) if tv[3 * i] != -2)
        if GHOST in tv[3 * t:3 * t + 3]:
            k = tv[3 * t:3 * t + 3].index(GHOST)
            t = tn[3 * t + k]
        rot = 0
        while True:
            base = 3 * t
            a, b, c = tv[base], tv[base + 1], tv[base + 2]
            if a == GHOST or b == GHOST or c == GHOST:
                # walked across a hull edge: p lies strictly outside it
                return t
            verts = (a, b, c)
            moved = False
            rot = (rot + 1) % 3
            for j in range(3):
                k = (j + rot) % 3
                x, y = verts[(k + 1) % 3], verts[(k + 2) % 3]
                xu, xv = U[x], V[x]
                if (U[y] - xu) * (pv - xv) - (V[y] - xv) * (pu - xu) < 0:
                    t = tn[base + k]
                    moved = True
                    break
            if not moved:
                for q in verts:
                    if U[q] == pu and V[q] == pv:
                        raise ValueError(f"duplicate point: index {p} equals index {q}")
                return t

    def insert(self, p):
        tv, tn = self.tv, self.tn
        t0 = self.locate(p)
        conflict = {t0}
        stack = [t0]
        verdict = {}
        boundary = []  # (x, y, outside triangle, dead triangle)
        while stack:
            t = stack.pop()
            base = 3 * t
            for k in range(3):
                n = tn[base + k]
                if n in conflict:
                    continue
                ok = verdict.get(n)
                if ok is None:
                    ok = verdict[n] = self._in_conflict(n, p)
                    if ok:
                        conflict.add(n)
                        stack.append(n)
                        continue
                elif ok:
                    continue
                boundary.append((tv[base + (k + 1) % 3], tv[base + (k + 2) % 3], n, t))
        starts, ends, made = {}, {}, []
        for x, y, n, dead in boundary:
            t = self.new_triangle(x, y, p)
            made.append(t)
            tn[3 * t + 2] = n
            nb = 3 * n
            if tn[nb] == dead:
                tn[nb] = t
            elif tn[nb + 1] == dead:
                tn[nb + 1] = t
            else:
                tn[nb + 2] = t
            starts[x] = t
            ends[y] = t
        # reuse dead slots only after the boundary has been relinked
        for t in conflict:
            self.kill(t)
        for t in made:
            x, y = tv[3 * t], tv[3 * t + 1]
            tn[3 * t] = starts[y]
            tn[3 * t + 1] = ends[x]
            if x != GHOST and y != GHOST:
                self.last = t

    def solid_triangles(self) -> list[tuple[int, int, int]]:
        tv = self.tv
        out = []
        for t in range(len(tv) // 3):
            a, b, c = tv[3 * t], tv[3 * t + 1], tv[3 * t + 2]
            if a >= 0 and b >= 0 and c >= 0:
                out.append((a, b, c))
        return out


def _edge_arrays(d, u, v, pairs) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    if len(pairs) == 0:
        z = np.zeros(0, dtype=np.int64)
        return z, z.copy(), z.copy()
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    i = pairs.min(axis=1)
    j = pairs.max(axis=1)
    key = np.unique(i * (len(u) + 1) + j)
    i, j = key // (len(u) + 1), key % (len(u) + 1)
    du = u[i] - u[j]
    dv = v[i] - v[j]
    w = (du * du - d * dv * dv) // 4
    return i, j, w


def triangulate(points, d: int | None = None) -> Triangulation:
    """Delaunay triangulation of distinct scaled points.

    ``points`` is a sequence of ScaledPoint, or a pair of integer arrays
    ``(u, v)`` together with ``d``.  With fewer than three points, or all of
    them collinear, the result has no triangles and the edges form a path.
    """
    if d is None:
        pts = list(points)
        if not pts:
            raise ValueError("need d when triangulating an empty point list")
        d = pts[0].d
        u = np.array([p.u for p in pts], dtype=np.int64)
        v = np.array([p.v for p in pts], dtype=np.int64)
    else:
        u = np.asarray(points[0], dtype=np.int64)
        v = np.asarray(points[1], dtype=np.int64)
    n = len(u)
    U, V = u.tolist(), v.tolist()
    D = -d

    order = hilbert_order(u, v).tolist()
    first = None
    if n >= 3:
        a, b = order[0], order[1]
        if U[a] == U[b] and V[a] == V[b]:
            raise ValueError(f"duplicate point: index {a} equals index {b}")
        for pos in range(2, n):
            c = order[pos]
            if (U[b] - U[a]) * (V[c] - V[a]) - (V[b] - V[a]) * (U[c] - U[a]) != 0:
                first = pos
                break

    if first is None:
        # collinear (or tiny) input: connect neighbours along the line
        line = sorted(range(n), key=lambda i: (U[i], V[i]))
        for x, y in zip(line, line[1:]):
            if U[x] == U[y] and V[x] == V[y]:
                raise ValueError(f"duplicate point: index {x} equals index {y}")
        pairs = list(zip(line, line[1:]))
        ei, ej, ew = _edge_arrays(d, u, v, pairs)
        return Triangulation(d, u, v, np.zeros((0, 3), dtype=np.int64), ei, ej, ew)

    mesh = _Mesh(U, V, D)
    mesh.start(order[0], order[1], order[first])
    for pos in range(2, n):
        if pos != first:
            mesh.insert(order[pos])

    tris = np.array(mesh.solid_triangles(), dtype=np.int64).reshape(-1, 3)
    pairs = np.concatenate([tris[:, [0, 1]], tris[:, [1, 2]], tris[:, [2, 0]]])
    ei, ej, ew = _edge_arrays(d, u, v, pairs)
    # canonical triangle order for reproducible output
    rot = np.argmin(tris, axis=1)
    tris = np.stack([tris[np.arange(len(tris)), (rot + k) % 3] for k in range(3)], axis=1)
    tris = tris[np.lexsort((tris[:, 2], tris[:, 1], tris[:, 0]))]
    return Triangulation(d, u, v, tris, ei, ej, ew)


def global_delaunay_violations(tri: Triangulation, chunk: int = 256) -> int:
    """Count (triangle, point) pairs with the point strictly inside the circumcircle.

    Vectorised with numpy int64; callers keep coordinates small enough that the
    lifted determinant cannot overflow (|u|, |v| up to a few thousand).
    """
    u, v, D = tri.u, tri.v, -tri.d
    bad = 0
    T = tri.triangles
    for s in range(0, len(T), chunk):
        blk = T[s:s + chunk]
        a, b, c = blk[:, 0:1], blk[:, 1:2], blk[:, 2:3]
        pu, pv = u[None, :], v[None, :]
        adu, adv = u[a] - pu, v[a] - pv
        bdu, bdv = u[b] - pu, v[b] - pv
        cdu, cdv = u[c] - pu, v[c] - pv
        det = ((adu * adu + D * adv * adv) * (bdu * cdv - bdv * cdu)
               + (bdu * bdu + D * bdv * bdv) * (cdu * adv - cdv * adu)
               + (cdu * cdu + D * cdv * cdv) * (adu * bdv - adv * bdu))
        bad += int((det > 0).sum())
    return bad

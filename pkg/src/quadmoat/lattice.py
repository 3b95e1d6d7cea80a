"""Planar embedding of ring elements and symmetry-reduced search sectors.

Points are kept as exact integers ``(u, v)`` standing for the Euclidean
point ``(u/2, (v/2)*sqrt(|d|))``, so squared distances are
``(du**2 + |d|*dv**2) / 4`` and equal the norm of the element difference.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .primality import ring_prime_mask
from .quadring import QuadField, RingElement, get_field, orbit


class ScaledPoint(NamedTuple):
    u: int
    v: int
    d: int

    @property
    def x(self) -> float:
        return self.u / 2

    @property
    def y(self) -> float:
        return self.v * math.sqrt(-self.d) / 2


def embed(f: QuadField, e) -> ScaledPoint:
    a, b = int(e[0]), int(e[1])
    if f.half_integer:
        return ScaledPoint(2 * a - b, b, f.d)
    return ScaledPoint(2 * a, 2 * b, f.d)


def unembed(f: QuadField, p: ScaledPoint) -> RingElement:
    u, v = p.u, p.v
    if f.half_integer:
        if (u + v) % 2:
            raise ValueError(f"{p} is not the image of a ring element")
        return RingElement((u + v) // 2, v)
    if u % 2 or v % 2:
        raise ValueError(f"{p} is not the image of a ring element")
    return RingElement(u // 2, v // 2)


def embed_arrays(f: QuadField, a, b) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if f.half_integer:
        return 2 * a - b, b.copy()
    return 2 * a, 2 * b


def scaled_sq_dist(d: int, p: ScaledPoint, q: ScaledPoint) -> int:
    du = p.u - q.u
    dv = p.v - q.v
    return (du * du - d * dv * dv) // 4


class SectorKind(enum.Enum):
    OCTANT = "octant"
    TWELFTH = "twelfth"
    QUADRANT = "quadrant"


def sector_kind(f: QuadField) -> SectorKind:
    if f.d == -1:
        return SectorKind.OCTANT
    if f.d == -3:
        return SectorKind.TWELFTH
    return SectorKind.QUADRANT


def _angular_ok(kind: SectorKind, d: int, u, v, pad: float):
    """Angular-side membership, exact when pad == 0 and widened by ``pad`` otherwise."""
    u = np.asarray(u)
    v = np.asarray(v)
    if kind is SectorKind.OCTANT:
        ok = (v >= 0) & (v <= u)
        if pad > 0:
            slack = 1e-9
            ok |= (v / 2 >= -pad - slack) & ((u - v) / 2 >= -pad * math.sqrt(2) - slack)
    elif kind is SectorKind.TWELFTH:
        ok = (v >= 0) & (3 * v <= u)
        if pad > 0:
            slack = 1e-9
            ok |= (v * math.sqrt(3) / 2 >= -pad - slack) & ((u - 3 * v) >= -4 * pad - slack)
    else:
        ok = (u >= 0) & (v >= 0)
        if pad > 0:
            slack = 1e-9
            ok |= (u >= -2 * pad - slack) & (v * math.sqrt(-d) >= -2 * pad - slack)
    return ok


@dataclass(frozen=True)
class Sector:
    """Symmetry-reduced search region bounded at x = C (and y = C for quadrants).

    ``pad`` widens the region across the symmetry lines only; the C
    boundaries are never padded.
    """

    field: QuadField
    C: int
    pad: float = 0.0

    def __post_init__(self):
        if self.C < 0:
            raise ValueError("boundary C must be non-negative")
        if self.pad < 0:
            raise ValueError("pad must be non-negative")

    @property
    def kind(self) -> SectorKind:
        return sector_kind(self.field)

    @property
    def has_y_boundary(self) -> bool:
        return self.kind is SectorKind.QUADRANT

    def contains(self, u, v, padded: bool = True):
        d = self.field.d
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        ok = _angular_ok(self.kind, d, u, v, self.pad if padded else 0.0)
        ok &= u <= 2 * self.C
        if self.has_y_boundary:
            ok &= (v <= 0) | (-d * v * v <= 4 * self.C * self.C)
        return ok

    def _bounding_box(self) -> tuple[float, float, float, float]:
        C, p = float(self.C), float(self.pad)
        if self.kind is SectorKind.OCTANT:
            return -p - p * math.sqrt(2), C, -p, C + p * math.sqrt(2)
        if self.kind is SectorKind.TWELFTH:
            return -math.sqrt(3) * p - 2 * p, C, -p, (C + 2 * p) / math.sqrt(3)
        return -p, C, -p, C

    def lattice_arrays(self, padded: bool = True) -> tuple[np.ndarray, np.ndarray]:
        """Coordinates (a, b) of every ring element in the sector, row-major in b."""
        f = self.field
        xmin, xmax, ymin, ymax = self._bounding_box()
        rt = math.sqrt(f.abs_d)
        if f.half_integer:
            bmin, bmax = math.floor(2 * ymin / rt) - 1, math.ceil(2 * ymax / rt) + 1
        else:
            bmin, bmax = math.floor(ymin / rt) - 1, math.ceil(ymax / rt) + 1
        a_rows, b_rows = [], []
        for b in range(bmin, bmax + 1):
            shift = b / 2 if f.half_integer else 0.0
            lo, hi = math.floor(xmin + shift) - 1, math.ceil(xmax + shift) + 1
            if hi < lo:
                continue
            a = np.arange(lo, hi + 1, dtype=np.int64)
            a_rows.append(a)
            b_rows.append(np.full(a.shape, b, dtype=np.int64))
        if not a_rows:
            return np.zeros(0, np.int64), np.zeros(0, np.int64)
        a = np.concatenate(a_rows)
        b = np.concatenate(b_rows)
        u, v = embed_arrays(f, a, b)
        keep = self.contains(u, v, padded=padded)
        return a[keep], b[keep]


def sector_lattice_bounds(s: Sector, padded: bool = True) -> Iterator[RingElement]:
    a, b = s.lattice_arrays(padded=padded)
    for ai, bi in zip(a.tolist(), b.tolist()):
        yield RingElement(ai, bi)


@dataclass
class SectorPrimes:
    """Ring primes of a sector, sorted by (norm, v, u), with exact embeddings."""

    sector: Sector
    a: np.ndarray
    b: np.ndarray
    u: np.ndarray
    v: np.ndarray
    norm: np.ndarray

    @property
    def field(self) -> QuadField:
        return self.sector.field

    def __len__(self):
        return len(self.a)

    def element(self, i: int) -> RingElement:
        return RingElement(int(self.a[i]), int(self.b[i]))

    def point(self, i: int) -> ScaledPoint:
        return ScaledPoint(int(self.u[i]), int(self.v[i]), self.field.d)

    def __getitem__(self, i: int) -> tuple[RingElement, ScaledPoint]:
        if i < 0:
            i += len(self)
        if not 0 <= i < len(self):
            raise IndexError(i)
        return self.element(i), self.point(i)

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def points(self) -> list[ScaledPoint]:
        d = self.field.d
        return [ScaledPoint(u, v, d) for u, v in zip(self.u.tolist(), self.v.tolist())]

    def subset(self, idx) -> "SectorPrimes":
        idx = np.sort(np.asarray(idx, dtype=np.int64))
        return SectorPrimes(self.sector, self.a[idx], self.b[idx], self.u[idx],
                            self.v[idx], self.norm[idx])


def generate_sector_primes(s: Sector, padded: bool = True) -> SectorPrimes:
    f = s.field
    a, b = s.lattice_arrays(padded=padded)
    keep = ring_prime_mask(f, a, b)
    a, b = a[keep], b[keep]
    u, v = embed_arrays(f, a, b)
    n = (u * u + f.abs_d * v * v) // 4
    order = np.lexsort((u, v, n))
    return SectorPrimes(s, a[order], b[order], u[order], v[order], n[order])


def boundary_distances(s: Sector, pts) -> tuple[float, float | None]:
    """Distances from the rightmost (and topmost) point to the C boundaries."""
    pts = list(pts)
    if not pts:
        raise ValueError("boundary_distances needs at least one point")
    umax = max(p.u for p in pts)
    d1 = s.C - umax / 2
    if not s.has_y_boundary:
        return d1, None
    vmax = max(p.v for p in pts)
    d2 = s.C - vmax * math.sqrt(s.field.abs_d) / 2
    return d1, d2


def _sqrt_less(x: int, k_squared: int) -> bool:
    """Exact test of sqrt(k_squared) < x / 2 for integer x."""
    return x > 0 and x * x > 4 * k_squared


def clears_boundary(s: Sector, umax: int, vmax: int, k_squared: int) -> bool:
    """Exact ``D1 > k`` (and ``D2 > k`` for quadrants) with k = sqrt(k_squared)."""
    if not _sqrt_less(2 * s.C - umax, k_squared):
        return False
    if not s.has_y_boundary:
        return True
    # D2 > k  <=>  2C - 2k > vmax*sqrt(|d|)
    C, D = s.C, s.field.abs_d
    if vmax <= 0:
        return C * C > k_squared
    lhs = 4 * C * C + 4 * k_squared - vmax * vmax * D
    return C * C > k_squared and lhs > 0 and lhs * lhs > 64 * C * C * k_squared


def canonical(f: QuadField, e) -> RingElement:
    """Representative of the unit/conjugation orbit inside the unpadded sector."""
    kind = sector_kind(f)
    best = None
    for g in orbit(f, e):
        p = embed(f, g)
        if bool(_angular_ok(kind, f.d, p.u, p.v, 0.0)):
            key = (p.v, p.u)
            if best is None or key < best[0]:
                best = (key, g)
    if best is None:
        raise AssertionError(f"no orbit point of {e} in the fundamental sector")
    return RingElement(int(best[1][0]), int(best[1][1]))


def make_sector(d: int, C: int, pad: float = 0.0) -> Sector:
    return Sector(get_field(d), int(C), float(pad))

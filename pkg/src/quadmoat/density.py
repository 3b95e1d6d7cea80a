"""Empirical prime counts in the fundamental sector against R**2 / (4 ln R).

Counts are taken over ring elements with embedded x > 0, y >= 0 that lie in
the field's symmetry sector (octant for d = -1, twelfth for d = -3, quadrant
otherwise) and have norm at most R**2.  Every split rational prime
p <= R**2 then contributes one element and every inert q <= R contributes q
itself, so apart from the ramified primes the count equals the residue-class
sum that the asymptotic estimate approximates.
"""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass
from math import isqrt

import numpy as np

from .lattice import SectorKind, sector_kind
from .primality import classifier, get_sieve, ring_prime_mask
from .quadring import QuadField


class SectorFraction(enum.Enum):
    QUARTER = 4
    OCTANT = 8
    TWELFTH = 12


def fundamental_fraction(f: QuadField) -> SectorFraction:
    return {SectorKind.OCTANT: SectorFraction.OCTANT,
            SectorKind.TWELFTH: SectorFraction.TWELFTH}.get(sector_kind(f),
                                                             SectorFraction.QUARTER)


def _radius_squared(R: float) -> int:
    # tolerate R = sqrt(n) computed in floating point
    return int(math.floor(R * R + 1e-9))


def _max_a(f: QuadField, b: int, R2: int) -> int:
    """Largest a with norm(a, b) <= R2 on the branch a >= b/2 (or -1 if none)."""
    if f.half_integer:
        c = (1 - f.d) // 4
        disc = b * b - 4 * (c * b * b - R2)
        if disc < 0:
            return -1
        a = (b + isqrt(disc)) // 2
        while a * a - a * b + c * b * b > R2:
            a -= 1
        while (a + 1) * (a + 1) - (a + 1) * b + c * b * b <= R2:
            a += 1
        return a
    rest = R2 + f.d * b * b
    return isqrt(rest) if rest >= 0 else -1


def _min_a(f: QuadField, b: int) -> int:
    kind = sector_kind(f)
    if kind is SectorKind.OCTANT:
        return max(b, 1)
    if kind is SectorKind.TWELFTH:
        # 3v <= u with u = 2a - b
        return max(2 * b, b // 2 + 1)
    if f.half_integer:
        return b // 2 + 1  # u = 2a - b > 0
    return 1


def sector_rows(f: QuadField, R: float, chunk: int = 1 << 21):
    """Yield (a, b) arrays covering the counting sector in row-major chunks."""
    R2 = _radius_squared(R)
    a_parts, b_parts, total = [], [], 0
    b = 0
    while True:
        lo, hi = _min_a(f, b), _max_a(f, b, R2)
        if hi < lo:
            if b > 0:
                break
        else:
            a = np.arange(lo, hi + 1, dtype=np.int64)
            a_parts.append(a)
            b_parts.append(np.full(len(a), b, dtype=np.int64))
            total += len(a)
            if total >= chunk:
                yield np.concatenate(a_parts), np.concatenate(b_parts)
                a_parts, b_parts, total = [], [], 0
        b += 1
    if a_parts:
        yield np.concatenate(a_parts), np.concatenate(b_parts)


def count_split_inert(f: QuadField, R: float) -> tuple[int, int]:
    """(#primes of prime norm, #inert associates) in the counting sector."""
    R2 = _radius_squared(R)
    sieve = get_sieve(R2)
    split = inert = 0
    for a, b in sector_rows(f, R):
        mask = ring_prime_mask(f, a, b, sieve)
        if not mask.any():
            continue
        if f.half_integer:
            n = a * a - a * b + ((1 - f.d) // 4) * b * b
        else:
            n = a * a - f.d * b * b
        prime_norm = sieve.mask(n[mask])
        split += int(prime_norm.sum())
        inert += int((~prime_norm).sum())
    return split, inert


def count_primes_in_quadrant(f: QuadField, R: float) -> int:
    """Ring primes with x > 0, y >= 0 in the field's sector and norm <= R**2."""
    split, inert = count_split_inert(f, R)
    return split + inert


def sector_area(f: QuadField, R: float, fraction: SectorFraction) -> float:
    """Area, in lattice coordinates, of a fraction of the ellipse norm <= R**2."""
    full = math.pi * R * R / math.sqrt(f.abs_d)
    if f.half_integer:
        full *= 2
    return full / fraction.value


def asymptotic_count(R: float) -> float:
    return R * R / (4 * math.log(R))


def residue_classes(f: QuadField) -> tuple[frozenset, frozenset, int]:
    """(split classes, inert classes, modulus) for odd primes coprime to the discriminant."""
    c = classifier(f)
    units = {r for r in range(1, c.modulus) if math.gcd(r, c.modulus) == 1}
    inert = frozenset(c.nonresidues)
    return frozenset(units - inert), inert, c.modulus


def class_counts(m: int, x: int) -> dict[int, int]:
    """Number of rational primes p <= x in each residue class coprime to m."""
    p = get_sieve(x).primes_upto(x)
    r = p % m
    return {u: int((r == u).sum()) for u in range(1, m) if math.gcd(u, m) == 1}


def class_sum_estimate(f: QuadField, R: float) -> tuple[int, int]:
    """Residue-class sums (pi_A(R**2), pi_B(R)) over split classes A and inert classes B.

    Only primes covered by the residue test enter; 2 and the ramified primes
    are lower-order and left out, as in the asymptotic argument.
    """
    R2 = _radius_squared(R)
    split_cls, inert_cls, m = residue_classes(f)
    big = class_counts(m, R2)
    small = class_counts(m, isqrt(R2))
    split = sum(big.get(u, 0) for u in split_cls)
    inert = sum(small.get(u, 0) for u in inert_cls)
    if m % 2 == 0:
        return split, inert
    # odd modulus: the class of 2 would otherwise be counted
    if R2 >= 2 and 2 % m in split_cls:
        split -= 1
    if isqrt(R2) >= 2 and 2 % m in inert_cls:
        inert -= 1
    return split, inert


@dataclass(frozen=True)
class DensityReport:
    d: int
    R: float
    empirical_count: int
    split_count: int
    inert_count: int
    asymptotic_count: float
    sector_fraction: str
    sector_area: float
    empirical_density: float
    asymptotic_density: float
    relative_error: float

    @property
    def density_constant(self) -> float:
        """asymptotic_density * pi * ln R: sqrt(2), 2, 3*sqrt(3)/2 for d = -2, -1, -3."""
        return self.asymptotic_density * math.pi * math.log(self.R)

    def as_dict(self) -> dict:
        out = asdict(self)
        out["density_constant"] = self.density_constant
        return out


def density_report(f: QuadField, R: float) -> DensityReport:
    if R < 2:
        raise ValueError("radius must be at least 2")
    split, inert = count_split_inert(f, R)
    count = split + inert
    frac = fundamental_fraction(f)
    area = sector_area(f, R, frac)
    asym = asymptotic_count(R)
    return DensityReport(
        d=f.d,
        R=float(R),
        empirical_count=count,
        split_count=split,
        inert_count=inert,
        asymptotic_count=asym,
        sector_fraction=frac.name,
        sector_area=area,
        empirical_density=count / area,
        asymptotic_density=asym / area,
        relative_error=abs(count - asym) / asym,
    )

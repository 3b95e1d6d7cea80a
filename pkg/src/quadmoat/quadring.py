"""Exact arithmetic in the rings of integers of the nine imaginary quadratic
fields with unique factorization.

An element ``a + b*tau`` is stored as the integer pair ``(a, b)``.  For
d = -1 and d = -2 the basis is ``{1, sqrt(d)}``; for the seven fields with
d = 1 (mod 4) it is ``{1, (-1 + sqrt(d))/2}``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

STARK_VALUES = (-1, -2, -3, -7, -11, -19, -43, -67, -163)


class BasisKind(enum.Enum):
    SQRT_D = "sqrt_d"
    HALF_INTEGER = "half_integer"


class RingElement(NamedTuple):
    a: int
    b: int


@dataclass(frozen=True)
class QuadField:
    """One of the nine UFD imaginary quadratic fields, keyed by ``d``."""

    d: int

    def __post_init__(self):
        if self.d not in STARK_VALUES:
            raise ValueError(
                f"d={self.d} is not one of the class-number-one values {STARK_VALUES}"
            )

    @property
    def basis_kind(self) -> BasisKind:
        return BasisKind.SQRT_D if self.d in (-1, -2) else BasisKind.HALF_INTEGER

    @property
    def half_integer(self) -> bool:
        return self.basis_kind is BasisKind.HALF_INTEGER

    @property
    def delta(self) -> int:
        """Field discriminant: d if d = 1 (mod 4), else 4d."""
        return self.d if self.d % 4 == 1 else 4 * self.d

    @property
    def abs_d(self) -> int:
        return -self.d

    @property
    def unit_count(self) -> int:
        return {-1: 4, -3: 6}.get(self.d, 2)

    @property
    def fold(self) -> int:
        """Order of the symmetry group generated by units and conjugation."""
        return 2 * self.unit_count

    @property
    def tau_symbol(self) -> str:
        return {-1: "i", -2: "sqrt(-2)", -3: "w"}.get(self.d, "t")

    def __str__(self):
        return f"Q(sqrt({self.d}))"


@lru_cache(maxsize=None)
def get_field(d: int) -> QuadField:
    return QuadField(int(d))


def norm(f: QuadField, e) -> int:
    a, b = int(e[0]), int(e[1])
    if f.half_integer:
        return a * a - a * b + ((1 - f.d) // 4) * b * b
    return a * a - f.d * b * b


def conjugate(f: QuadField, e) -> RingElement:
    a, b = e
    if f.half_integer:
        # conj(tau) = -1 - tau
        return RingElement(a - b, -b)
    return RingElement(a, -b)


def subtract(e1, e2) -> RingElement:
    return RingElement(e1[0] - e2[0], e1[1] - e2[1])


def add(e1, e2) -> RingElement:
    return RingElement(e1[0] + e2[0], e1[1] + e2[1])


def multiply(f: QuadField, x, y) -> RingElement:
    """Ring product.  Only the test suite and the symmetry helpers use it."""
    a1, b1 = x
    a2, b2 = y
    if f.half_integer:
        c = (f.d - 1) // 4
        return RingElement(a1 * a2 + c * b1 * b2, a1 * b2 + a2 * b1 - b1 * b2)
    return RingElement(a1 * a2 + f.d * b1 * b2, a1 * b2 + a2 * b1)


def divides(f: QuadField, x, e) -> bool:
    """True if ``e = x * y`` for some ring element ``y`` (x nonzero)."""
    n = norm(f, x)
    if n == 0:
        raise ZeroDivisionError("division by zero element")
    num = multiply(f, e, conjugate(f, x))
    return num.a % n == 0 and num.b % n == 0


@lru_cache(maxsize=None)
def _units(d: int) -> tuple[RingElement, ...]:
    f = get_field(d)
    found = [
        RingElement(a, b)
        for b in range(-1, 2)
        for a in range(-1, 2)
        if norm(f, (a, b)) == 1
    ]
    found.sort(key=lambda u: (u.b, u.a))
    return tuple(found)


def units(f: QuadField) -> list[RingElement]:
    return list(_units(f.d))


def associates(f: QuadField, e) -> list[RingElement]:
    return [multiply(f, u, e) for u in _units(f.d)]


def orbit(f: QuadField, e) -> set[RingElement]:
    """All images of ``e`` under units and conjugation."""
    ce = conjugate(f, e)
    return set(associates(f, e)) | set(associates(f, ce))


def format_element(f: QuadField, e) -> str:
    """Text form such as ``2+i``, ``52+7*w`` or ``3+2*sqrt(-2)``."""
    a, b = int(e[0]), int(e[1])
    sym = f.tau_symbol
    if b == 0:
        return str(a)
    if abs(b) == 1:
        tail = sym
    else:
        tail = f"{abs(b)}*{sym}"
    if a == 0:
        return tail if b > 0 else "-" + tail
    return f"{a}{'+' if b > 0 else '-'}{tail}"

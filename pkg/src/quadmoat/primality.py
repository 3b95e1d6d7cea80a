"""Rational and ring primality.

Ring primes come in two kinds: elements whose norm is a rational prime, and
associates of inert rational primes (norm q**2).  Inert odd primes are
classified by residue class, which avoids a Legendre symbol evaluation per
prime.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import isqrt

import numpy as np

from .quadring import QuadField, associates, get_field, norm

DEFAULT_SIEVE_LIMIT = 1 << 26

# Deterministic for every n < 3.3e24, which covers all 64-bit inputs.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def miller_rabin(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeSieve:
    """Odd-only sieve of Eratosthenes with a Miller-Rabin fallback above ``limit``."""

    def __init__(self, limit: int = DEFAULT_SIEVE_LIMIT):
        self.limit = max(int(limit), 2)
        # odd[i] <=> 2*i + 1 is prime
        odd = np.ones(self.limit // 2 + 1, dtype=bool)
        odd[0] = False
        for i in range(1, (isqrt(self.limit) - 1) // 2 + 1):
            if odd[i]:
                p = 2 * i + 1
                odd[p * p // 2 :: p] = False
        self._odd = odd

    def is_prime(self, n: int) -> bool:
        n = int(n)
        if n > self.limit:
            return miller_rabin(n)
        if n < 3:
            return n == 2
        return bool(n & 1) and bool(self._odd[n >> 1])

    def mask(self, n) -> np.ndarray:
        """Vectorised primality of a non-negative integer array."""
        n = np.asarray(n, dtype=np.int64)
        out = np.zeros(n.shape, dtype=bool)
        small = n <= self.limit
        ns = n[small]
        out[small] = (ns == 2) | ((ns & 1 == 1) & self._odd[ns >> 1] & (ns > 2))
        if not small.all():
            idx = np.nonzero(~small)
            out[idx] = [miller_rabin(int(v)) for v in n[idx]]
        return out

    def primes_upto(self, x: int) -> np.ndarray:
        x = min(int(x), self.limit)
        if x < 2:
            return np.zeros(0, dtype=np.int64)
        odd = np.nonzero(self._odd[: (x - 1) // 2 + 1])[0] * 2 + 1
        return np.concatenate(([2], odd)).astype(np.int64)


_sieve_limit = DEFAULT_SIEVE_LIMIT
_sieve: PrimeSieve | None = None


def set_sieve_limit(limit: int) -> None:
    global _sieve_limit, _sieve
    if limit != _sieve_limit:
        _sieve_limit = int(limit)
        _sieve = None


def get_sieve(min_limit: int = 0) -> PrimeSieve:
    """Shared sieve; rebuilt larger when a caller needs more than the current limit."""
    global _sieve
    limit = max(_sieve_limit, int(min_limit))
    if _sieve is None or _sieve.limit < limit:
        _sieve = PrimeSieve(limit)
    return _sieve


def is_rational_prime(n: int) -> bool:
    if n < 0:
        raise ValueError("n must be non-negative")
    return get_sieve().is_prime(n)


@dataclass(frozen=True)
class InertClassifier:
    """Residue-class test for inert rational primes in one field."""

    d: int
    modulus: int
    nonresidues: frozenset = dc_field(repr=False)
    two_is_inert: bool

    @classmethod
    def for_field(cls, f: QuadField) -> "InertClassifier":
        two = f.delta % 2 != 0 and f.d % 8 == 5
        if f.d == -1:
            return cls(f.d, 8, frozenset({3, 7}), two)
        if f.d == -2:
            return cls(f.d, 8, frozenset({5, 7}), two)
        m = f.abs_d
        squares = {r * r % m for r in range(1, m)}
        return cls(f.d, m, frozenset(set(range(1, m)) - squares), two)

    def is_inert(self, p: int) -> bool:
        if p == 2:
            return self.two_is_inert
        delta = self.d if self.d % 4 == 1 else 4 * self.d
        if delta % p == 0:
            return False
        return p % self.modulus in self.nonresidues


_classifiers: dict[int, InertClassifier] = {}


def classifier(f: QuadField) -> InertClassifier:
    c = _classifiers.get(f.d)
    if c is None:
        c = _classifiers[f.d] = InertClassifier.for_field(f)
    return c


def is_inert(f: QuadField, p: int) -> bool:
    if not is_rational_prime(p):
        raise ValueError(f"{p} is not a rational prime")
    return classifier(f).is_inert(p)


def is_ring_prime(f: QuadField, e) -> bool:
    n = norm(f, e)
    if n < 2:
        return False
    if is_rational_prime(n):
        return True
    q = isqrt(n)
    if q * q != n or not is_rational_prime(q) or not classifier(f).is_inert(q):
        return False
    return (int(e[0]), int(e[1])) in associates(f, (q, 0))


_inert_cache: dict[int, np.ndarray] = {}


def inert_table(f: QuadField, limit: int) -> np.ndarray:
    """Boolean table t[q] = q is an inert rational prime, for 0 <= q <= limit."""
    t = _inert_cache.get(f.d)
    if t is not None and len(t) > limit:
        return t
    c = classifier(f)
    limit = max(int(limit), 2 * (len(t) if t is not None else 0), 1024)
    p = get_sieve(limit).primes_upto(limit)
    odd = p[p > 2]
    ok = np.isin(odd % c.modulus, np.fromiter(c.nonresidues, dtype=np.int64))
    ok &= f.delta % odd != 0
    t = np.zeros(limit + 1, dtype=bool)
    t[odd[ok]] = True
    t[2] = c.two_is_inert
    _inert_cache[f.d] = t
    return t


def ring_prime_mask(f: QuadField, a, b, sieve: PrimeSieve | None = None) -> np.ndarray:
    """Vectorised ``is_ring_prime`` over coordinate arrays."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if f.half_integer:
        n = a * a - a * b + ((1 - f.d) // 4) * b * b
    else:
        n = a * a - f.d * b * b
    if sieve is None:
        sieve = get_sieve()
    mask = sieve.mask(n)
    # inert associates: unit multiples of a rational prime q
    cand = ~mask & (n >= 4)
    if cand.any():
        q = np.zeros(n.shape, dtype=np.int64)
        q[cand] = np.round(np.sqrt(n[cand].astype(np.float64))).astype(np.int64)
        cand &= q * q == n
        if cand.any():
            table = inert_table(f, int(q[cand].max()))
            ok = np.zeros(n.shape, dtype=bool)
            ok[cand] = table[q[cand]]
            us = associates(get_field(f.d), (1, 0))
            assoc = np.zeros(n.shape, dtype=bool)
            for ua, ub in us:
                assoc |= (a == ua * q) & (b == ub * q)
            mask |= ok & assoc
    return mask

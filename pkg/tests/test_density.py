import math

import pytest

from quadmoat.density import (SectorFraction, asymptotic_count, class_counts,
                              class_sum_estimate, count_primes_in_quadrant,
                              count_split_inert, density_report, fundamental_fraction,
                              residue_classes, sector_area)
from quadmoat.lattice import embed
from quadmoat.primality import is_ring_prime
from quadmoat.quadring import STARK_VALUES, get_field, norm

from oracles import kronecker, trial_prime


def test_count_examples():
    assert count_primes_in_quadrant(get_field(-1), math.sqrt(5)) == 2
    assert count_primes_in_quadrant(get_field(-2), 2) == 1
    assert count_primes_in_quadrant(get_field(-3), 1.5) == 0
    assert count_primes_in_quadrant(get_field(-7), 1.4) == 0


def _brute_count(f, R):
    """Direct scan of the counting region with the scalar primality test."""
    R2 = math.floor(R * R + 1e-9)
    frac = fundamental_fraction(f)
    n = 0
    lim = 2 * math.isqrt(R2) + 2
    for a in range(-lim, lim + 1):
        for b in range(0, lim + 1):
            if norm(f, (a, b)) > R2:
                continue
            p = embed(f, (a, b))
            if p.u <= 0 or p.v < 0:
                continue
            if frac is SectorFraction.OCTANT and p.v > p.u:
                continue
            if frac is SectorFraction.TWELFTH and 3 * p.v > p.u:
                continue
            n += is_ring_prime(f, (a, b))
    return n


@pytest.mark.parametrize("d", STARK_VALUES)
def test_count_matches_scan(d):
    f = get_field(d)
    for R in (10, 31.5, 60):
        assert count_primes_in_quadrant(f, R) == _brute_count(f, R)


def test_sector_areas():
    R = 7.0
    assert sector_area(get_field(-2), R, SectorFraction.QUARTER) == pytest.approx(
        math.pi * R * R / (4 * math.sqrt(2)))
    assert sector_area(get_field(-3), R, SectorFraction.TWELFTH) == pytest.approx(
        math.pi * R * R / (6 * math.sqrt(3)))
    assert sector_area(get_field(-1), R, SectorFraction.QUARTER) == pytest.approx(math.pi * R * R / 4)


@pytest.mark.parametrize("d,const", [(-2, math.sqrt(2)), (-3, 3 * math.sqrt(3) / 2), (-1, 2.0)])
def test_density_constants(d, const):
    for R in (100, 1234.5):
        rep = density_report(get_field(d), R)
        assert rep.density_constant == pytest.approx(const, rel=1e-12)


def test_report_fields():
    rep = density_report(get_field(-1), 100)
    assert rep.empirical_count == rep.split_count + rep.inert_count
    assert rep.asymptotic_count == pytest.approx(asymptotic_count(100))
    assert rep.relative_error == pytest.approx(
        abs(rep.empirical_count - rep.asymptotic_count) / rep.asymptotic_count)
    assert rep.sector_fraction == "OCTANT"
    assert set(rep.as_dict()) >= {"d", "R", "empirical_count", "density_constant"}
    with pytest.raises(ValueError):
        density_report(get_field(-1), 1.5)


@pytest.mark.parametrize("d", STARK_VALUES)
def test_residue_classes_are_kronecker(d):
    f = get_field(d)
    split, inert, m = residue_classes(f)
    assert not split & inert
    for p in range(3, 3000):
        if not trial_prime(p) or f.delta % p == 0:
            continue
        k = kronecker(f.delta, p)
        assert (p % m in inert) == (k == -1)
        assert (p % m in split) == (k == 1)


def test_class_counts():
    assert class_counts(4, 30) == {1: 4, 3: 5}  # 5,13,17,29 and 3,7,11,19,23


@pytest.mark.parametrize("d", STARK_VALUES)
def test_counts_equal_class_sums(d):
    """Sector counts are the residue-class sums plus the few primes the classes leave out."""
    f = get_field(d)
    R = 300
    split, inert = count_split_inert(f, R)
    cls_split, cls_inert = class_sum_estimate(f, R)
    # the ramified prime only has a representative with x > 0 for d = -1 (1+i)
    # and d = -3 (2+w); the rational prime 2 falls outside the odd moduli
    two_kron = kronecker(f.delta, 2)
    odd_modulus = d % 4 == 1
    extra_split = (d in (-1, -3)) + (odd_modulus and two_kron == 1)
    extra_inert = int(odd_modulus and two_kron == -1)
    assert split == cls_split + extra_split
    assert inert == cls_inert + extra_inert


def test_convergence_trend_small():
    # cheaper stand-in for the R = 10**4 acceptance check
    for d in (-1, -2, -3, -7):
        f = get_field(d)
        assert density_report(f, 2000).relative_error < density_report(f, 100).relative_error

import math

import numpy as np
import pytest

from quadmoat.delaunay import triangulate
from quadmoat.lattice import canonical, generate_sector_primes, make_sector
from quadmoat.moats import (MoatRecord, enumerate_moats, find_moats_up_to,
                            reachable_frontier, record_to_dict, start_prime_index, sweep,
                            validate_moat)
from quadmoat.quadring import RingElement, get_field, norm
from quadmoat.unionfind import UnionFind

from oracles import pair_weights, reachable, threshold_moats


def _setup(d, C, pad=0.0):
    p = generate_sector_primes(make_sector(d, C, pad))
    return p, triangulate((p.u, p.v), d)


def test_union_find_tracks_extrema():
    uf = UnionFind([5, 9, 9, 2], [1, 7, 3, 8], [4, 0, 6, 1])
    assert uf.extrema(0) == (0, 0, 0)
    uf.union(0, 2)
    uf.union(3, 0)
    assert uf.component_size(2) == 3
    assert uf.extrema(3) == (2, 3, 2)
    uf.union(1, 2)
    # equal norms: lower index wins
    assert uf.extrema(0)[0] == 1
    assert not uf.union(0, 1)


@pytest.mark.parametrize("d", [-1, -2, -3, -7, -11])
@pytest.mark.parametrize("pad", [0.0, 3.0])
def test_records_match_bruteforce_reachability(d, pad):
    p, tri = _setup(d, 60, pad)
    start = start_prime_index(p)
    got = enumerate_moats(tri, p, start)
    want = threshold_moats(d, p.u, p.v, p.norm, start)
    f = get_field(d)
    assert [r.k_squared for r in got] == [k for k, _ in want]
    assert [r.farthest_prime for r in got] == [canonical(f, p.element(i)) for _, i in want]


@pytest.mark.parametrize("d", [-1, -3, -19])
def test_mst_path_is_minimax(d):
    """Reachability at threshold t through Delaunay edges equals reachability in the complete graph."""
    p, tri = _setup(d, 40)
    W = pair_weights(d, p.u, p.v)
    start = start_prime_index(p)
    for t in sorted(set(tri.edge_w.tolist()))[:25]:
        uf = UnionFind(p.norm.tolist(), p.u.tolist(), p.v.tolist())
        for i, j, w in tri.edges:
            if w <= t:
                uf.union(i, j)
        root = uf.find(start)
        mine = np.array([uf.find(i) == root for i in range(len(p))])
        assert (mine == reachable(W, start, t)).all()


def test_records_are_monotone():
    p, tri = _setup(-2, 120, 4.0)
    recs = enumerate_moats(tri, p)
    assert len(recs) >= 3
    for a, b in zip(recs, recs[1:]):
        assert a.k_squared < b.k_squared
        assert a.farthest_norm < b.farthest_norm
        assert a.component_size < b.component_size


def test_sweep_growths_cover_records():
    p, tri = _setup(-7, 60, 3.0)
    sw = sweep(tri, p, start_prime_index(p))
    assert sw.growths[-1].next_growth is None
    assert all(g.next_growth is not None for g in sw.growths[:-1])
    ks = {g.k_squared for g in sw.growths}
    assert all(r.k_squared in ks for r in sw.records)
    with pytest.raises(IndexError):
        sweep(tri, p, len(p))


def test_start_prime():
    p, _ = _setup(-1, 30, 2.0)
    assert p.element(start_prime_index(p)) == (1, 1)
    p, _ = _setup(-7, 30, 2.0)
    assert p.element(start_prime_index(p)) == (1, 1)
    p, _ = _setup(-3, 30, 2.0)
    assert p.element(start_prime_index(p)) == (2, 1)


def _rec(k2, umax, vmax=0):
    return MoatRecord(k_squared=k2, farthest_prime=RingElement(2, 1), farthest_norm=5,
                      component_size=3, rightmost_u=umax, topmost_v=vmax)


def test_validate_examples():
    assert validate_moat(_rec(1, 4, 2), make_sector(-1, 100)).validated
    assert not validate_moat(_rec(1, 200), make_sector(-1, 100)).validated
    # rightmost x = C - 5 with k = sqrt(32) > 5
    assert not validate_moat(_rec(32, 2 * 100 - 10), make_sector(-7, 100)).validated
    assert validate_moat(_rec(24, 2 * 100 - 10), make_sector(-7, 100)).validated
    assert validate_moat(_rec(1, 4), make_sector(-1, 100)).C_used == 100


def test_find_moats_gaussian_small():
    res = find_moats_up_to(get_field(-1), 4)
    assert res.complete
    assert [(r.k_squared, r.farthest_prime) for r in res] == [(1, (2, 1)), (2, (11, 4)), (4, (42, 17))]
    assert all(r.validated for r in res)
    assert [round(r.distance, 3) for r in res] == [2.236, 11.705, 45.31]


def test_find_moats_sqrt_minus_two_prefix():
    res = find_moats_up_to(get_field(-2), 12)
    assert [(r.k_label(), r.farthest_prime) for r in res] == [
        ("1", (1, 1)), ("2", (3, 2)), ("sqrt(6)", (13, 6)), ("sqrt(12)", (25, 42))]


def test_k_below_first_gap_gives_nothing():
    res = find_moats_up_to(get_field(-7), 1)
    assert res.complete and len(res) == 0


def test_ceiling_gives_partial_result():
    res = find_moats_up_to(get_field(-1), 10, C0=64, C_ceiling=128)
    assert not res.complete
    assert [r.k_squared for r in res] == [1, 2, 4, 8]
    assert res.C_used == 128


def test_argument_checks():
    f = get_field(-1)
    with pytest.raises(ValueError):
        find_moats_up_to(f, 0)
    with pytest.raises(ValueError):
        find_moats_up_to(f, 4, C0=1)
    with pytest.raises(ValueError):
        find_moats_up_to(f, 4, C0=256, C_ceiling=128)


def test_validated_records_survive_doubling():
    f = get_field(-3)
    res = find_moats_up_to(f, 4)
    p, tri = _setup(-3, 2 * res.C_used, 2.0)
    again = enumerate_moats(tri, p)[:len(res)]
    assert [(r.k_squared, r.farthest_prime) for r in again] == \
        [(r.k_squared, r.farthest_prime) for r in res]


def test_reachable_frontier():
    e, dist = reachable_frontier(get_field(-7), 1)
    assert e == (1, 1) and dist == pytest.approx(math.sqrt(2))
    e, dist = reachable_frontier(get_field(-7), 4)
    assert e == (13, 2) and dist == pytest.approx(12.288, abs=1e-3)
    e, dist = reachable_frontier(get_field(-2), 18)
    assert e == (435, 391) and dist == pytest.approx(703.553, abs=1e-3)


def test_record_dict():
    f = get_field(-3)
    r = find_moats_up_to(f, 1).records[0]
    d = record_to_dict(f, r)
    assert d["farthest"] == {"a": 5, "b": 2, "display": "5+2*w"}
    assert d["k_squared"] == 1 and d["distance"] == 4.359 and d["validated"]
    assert norm(f, (5, 2)) == 19

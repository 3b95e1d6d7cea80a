import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quadmoat.bench import kruskal_weights
from quadmoat.delaunay import global_delaunay_violations, hilbert_order, triangulate
from quadmoat.lattice import ScaledPoint, embed, embed_arrays, generate_sector_primes, make_sector
from quadmoat.quadring import STARK_VALUES, get_field

from oracles import circumcircle_side, prim_mst_weights


def _lattice_points(d, pairs):
    f = get_field(d)
    pairs = sorted(set(pairs))
    a = np.array([p[0] for p in pairs], dtype=np.int64)
    b = np.array([p[1] for p in pairs], dtype=np.int64)
    return embed_arrays(f, a, b)


def _hull_edges(tri):
    count = {}
    for t in tri.triangles.tolist():
        for x, y in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
            key = (min(x, y), max(x, y))
            count[key] = count.get(key, 0) + 1
    return sum(1 for c in count.values() if c == 1)


def _check(tri, oracle=False):
    n = tri.n_points
    assert global_delaunay_violations(tri) == 0
    E, T = len(tri.edge_w), len(tri.triangles)
    assert E <= 3 * n - 6
    h = _hull_edges(tri)
    assert E == 3 * n - 3 - h
    assert T == 2 * n - 2 - h
    u, v = tri.u.tolist(), tri.v.tolist()
    for t in tri.triangles.tolist():
        o = (u[t[1]] - u[t[0]]) * (v[t[2]] - v[t[0]]) - (v[t[1]] - v[t[0]]) * (u[t[2]] - u[t[0]])
        assert o > 0
    if oracle:
        pts = list(zip(u, v))
        for t in tri.triangles.tolist():
            A, B, C = (pts[i] for i in t)
            for j, p in enumerate(pts):
                if j not in t:
                    assert circumcircle_side(-tri.d, A, B, C, p) <= 0


def test_three_points():
    tri = triangulate([ScaledPoint(0, 0, -1), ScaledPoint(2, 0, -1), ScaledPoint(0, 2, -1)])
    assert len(tri.triangles) == 1 and len(tri.edges) == 3


def test_square():
    pts = [ScaledPoint(u, v, -1) for u, v in ((0, 0), (2, 0), (2, 2), (0, 2))]
    tri = triangulate(pts)
    assert len(tri.triangles) == 2 and len(tri.edges) == 5


def test_degenerate_inputs():
    assert triangulate((np.array([], dtype=np.int64), np.array([], dtype=np.int64)), -1).edges == []
    assert triangulate([ScaledPoint(4, 2, -1)]).edges == []
    two = triangulate([ScaledPoint(4, 2, -1), ScaledPoint(2, 2, -1)])
    assert [tuple(e) for e in two.edges] == [(0, 1, 1)]
    line = triangulate([ScaledPoint(2 * k, 2 * k, -1) for k in (3, 0, 2, 1)])
    assert len(line.triangles) == 0
    assert sorted((e.i, e.j) for e in line.edges) == [(0, 2), (1, 3), (2, 3)]
    with pytest.raises(ValueError):
        triangulate([ScaledPoint(0, 0, -1), ScaledPoint(2, 0, -1), ScaledPoint(0, 0, -1),
                     ScaledPoint(0, 2, -1)])


def test_edge_weights_are_norms():
    tri = triangulate(_lattice_points(-3, [(a, b) for a in range(6) for b in range(4)]), -3)
    f = get_field(-3)
    for e in tri.edges:
        du = int(tri.u[e.i] - tri.u[e.j])
        dv = int(tri.v[e.i] - tri.v[e.j])
        assert e.w == (du * du + 3 * dv * dv) // 4 > 0
        assert e.i < e.j
    assert tri.to_csv().splitlines()[0] == "i,j,w"
    assert f.d == tri.d


@pytest.mark.parametrize("d", STARK_VALUES)
def test_grid_with_cocircular_points(d):
    u, v = _lattice_points(d, [(a, b) for a in range(-6, 7) for b in range(-4, 5)])
    _check(triangulate((u, v), d), oracle=True)


pairs = st.lists(st.tuples(st.integers(-30, 30), st.integers(-30, 30)), min_size=3, max_size=60)


@given(st.sampled_from(STARK_VALUES), pairs)
@settings(max_examples=80, deadline=None)
def test_random_sets(d, pts):
    u, v = _lattice_points(d, pts)
    tri = triangulate((u, v), d)
    if len(tri.triangles):
        _check(tri, oracle=len(u) <= 25)
    assert kruskal_weights(len(u), tri.edge_i, tri.edge_j, tri.edge_w).tolist() == \
        prim_mst_weights(d, u, v)


@given(st.sampled_from(STARK_VALUES), pairs, st.randoms(use_true_random=False))
@settings(max_examples=40, deadline=None)
def test_insertion_order_does_not_matter(d, pts, rnd):
    u, v = _lattice_points(d, pts)
    perm = list(range(len(u)))
    rnd.shuffle(perm)
    perm = np.array(perm)
    t0 = triangulate((u, v), d)
    t1 = triangulate((u[perm], v[perm]), d)
    back = {tuple(sorted(perm[list(t)].tolist())) for t in t1.triangles.tolist()}
    assert back == {tuple(sorted(t)) for t in t0.triangles.tolist()}


def test_deterministic():
    p = generate_sector_primes(make_sector(-7, 80))
    t0 = triangulate((p.u, p.v), -7)
    t1 = triangulate((p.u, p.v), -7)
    assert t0.to_csv() == t1.to_csv()
    assert np.array_equal(t0.triangles, t1.triangles)


def test_contains_emst_of_gaussian_sector_primes():
    p = generate_sector_primes(make_sector(-1, 20), padded=False)
    tri = triangulate((p.u, p.v), -1)
    assert kruskal_weights(len(p), tri.edge_i, tri.edge_j, tri.edge_w).tolist() == \
        prim_mst_weights(-1, p.u, p.v)
    # each dense MST edge weight class appears among Delaunay edges
    assert set(prim_mst_weights(-1, p.u, p.v)) <= set(tri.edge_w.tolist())


def test_accepts_scaled_points():
    pts = [embed(get_field(-11), (a, b)) for a, b in itertools.product(range(4), range(3))]
    tri = triangulate(pts)
    _check(tri, oracle=True)


def test_hilbert_order_is_permutation():
    rng = random.Random(5)
    u = np.array([rng.randint(-100, 100) for _ in range(200)])
    v = np.array([rng.randint(-100, 100) for _ in range(200)])
    assert sorted(hilbert_order(u, v).tolist()) == list(range(200))

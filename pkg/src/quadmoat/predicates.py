"""Exact orientation and in-circle predicates on scaled lattice points.

With points stored as ``(u, v)`` for the Euclidean point
``(u/2, v*sqrt(|d|)/2)``, the factor ``sqrt(|d|)`` comes out of the
y-column as a positive constant, so both predicates reduce to integer
determinants.  Python integers are unbounded, so no overflow is possible.
"""
from __future__ import annotations


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _check_same_field(*pts) -> int:
    d = pts[0].d
    for p in pts[1:]:
        if p.d != d:
            raise ValueError("points come from different fields")
    return d


def orient_raw(au, av, bu, bv, cu, cv) -> int:
    return (bu - au) * (cv - av) - (bv - av) * (cu - au)


def orient(A, B, C) -> int:
    """+1 if A, B, C turn counterclockwise, -1 if clockwise, 0 if collinear."""
    _check_same_field(A, B, C)
    return _sign(orient_raw(A.u, A.v, B.u, B.v, C.u, C.v))


def incircle_raw(D, au, av, bu, bv, cu, cv, pu, pv) -> int:
    """In-circle determinant relative to P, lifted with u**2 + D*v**2."""
    adu, adv = au - pu, av - pv
    bdu, bdv = bu - pu, bv - pv
    cdu, cdv = cu - pu, cv - pv
    alift = adu * adu + D * adv * adv
    blift = bdu * bdu + D * bdv * bdv
    clift = cdu * cdu + D * cdv * cdv
    return (alift * (bdu * cdv - bdv * cdu)
            + blift * (cdu * adv - cdv * adu)
            + clift * (adu * bdv - adv * bdu))


def in_circumcircle(A, B, C, P) -> int:
    """+1 if P is strictly inside the circle through A, B, C; 0 if on it; -1 outside.

    The answer does not depend on the order of A, B, C.
    """
    D = -_check_same_field(A, B, C, P)
    o = _sign(orient_raw(A.u, A.v, B.u, B.v, C.u, C.v))
    if o == 0:
        raise ValueError("A, B, C are collinear")
    rows = []
    for Q in (A, B, C):
        rows.append((Q.u - P.u, Q.v - P.v,
                     (Q.u * Q.u - P.u * P.u) + D * (Q.v * Q.v - P.v * P.v)))
    (a0, a1, a2), (b0, b1, b2), (c0, c1, c2) = rows
    det = (a0 * (b1 * c2 - b2 * c1)
           - a1 * (b0 * c2 - b2 * c0)
           + a2 * (b0 * c1 - b1 * c0))
    return o * _sign(det)


def incircle_perturbed(D, ia, ib, ic, ip, U, V) -> int:
    """Sign of the in-circle test for CCW triangle (ia, ib, ic) and point ip,
    never zero.

    Cocircular ties are broken by symbolically raising every point's lift by
    an infinitesimal that is larger for lower indices, so the lowest-index
    point of a cocircular quadruple behaves as if slightly outside.
    """
    au, av, bu, bv = U[ia], V[ia], U[ib], V[ib]
    cu, cv, pu, pv = U[ic], V[ic], U[ip], V[ip]
    adu, adv = au - pu, av - pv
    bdu, bdv = bu - pu, bv - pv
    cdu, cdv = cu - pu, cv - pv
    ca = bdu * cdv - bdv * cdu
    cb = cdu * adv - cdv * adu
    cc = adu * bdv - adv * bdu
    det = ((adu * adu + D * adv * adv) * ca
           + (bdu * bdu + D * bdv * bdv) * cb
           + (cdu * cdu + D * cdv * cdv) * cc)
    if det:
        return 1 if det > 0 else -1
    # coefficient of each point's lift in the determinant
    coef = ((ia, ca), (ib, cb), (ic, cc), (ip, -(ca + cb + cc)))
    for _, c in sorted(coef):
        if c:
            return 1 if c > 0 else -1
    raise ValueError("degenerate in-circle query on collinear triangle")

import random
from fractions import Fraction

import pytest

from halfsquares.polytope import (
    BOUNDARY,
    EXTERIOR,
    INTERIOR,
    GeneralPolytope,
    SimplexPolytope,
)


def test_barycentric_motzkin_triangle():
    tri = SimplexPolytope([(4, 2), (2, 4)])
    lam = tri.barycentric((2, 2)).weights
    assert lam == (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))


def test_barycentric_lifted_tetrahedron():
    tet = SimplexPolytope([(4, 6, 2), (2, 6, 2), (0, 0, 4)])
    lam = tet.barycentric((2, 4, 2)).weights
    assert lam == (Fraction(1, 3), Fraction(1, 3), Fraction(1, 6), Fraction(1, 6))


def test_barycentric_at_vertex():
    tri = SimplexPolytope([(4, 2), (2, 4)])
    assert tri.barycentric((4, 2)).weights == (1, 0, 0)


def test_classify_examples():
    assert SimplexPolytope([(6, 2), (2, 4)]).classify((2, 2)) == INTERIOR
    tri = SimplexPolytope([(4, 2), (2, 4)])
    assert tri.classify((4, 2)) == BOUNDARY
    bc = tri.barycentric((5, 5))
    assert sum(bc.weights[:-1]) == Fraction(5, 3)
    assert tri.classify((5, 5)) == EXTERIOR


def test_degenerate_vertices_rejected():
    with pytest.raises(ValueError):
        SimplexPolytope([(1, 2), (2, 4)])


def test_member_general_examples():
    half_motzkin = GeneralPolytope([(0, 0), (2, 1), (1, 2)])
    assert half_motzkin.member((1, 1))
    assert not half_motzkin.member((0, 1))
    for g in half_motzkin.generators:
        assert half_motzkin.member(g)


def test_member_agrees_with_simplex_classify():
    rng = random.Random(23)
    tri = SimplexPolytope([(5, 1), (2, 4)])
    hull = GeneralPolytope([(0, 0), (5, 1), (2, 4)])
    for _ in range(500):
        p = (Fraction(rng.randint(0, 10), 2), Fraction(rng.randint(0, 10), 2))
        inside = tri.classify(p) in (INTERIOR, BOUNDARY)
        assert hull.member(p) == inside


def test_interior_round_trip():
    rng = random.Random(29)
    tet = SimplexPolytope([(4, 6, 2), (2, 6, 2), (0, 0, 4)])
    for _ in range(50):
        lams = [Fraction(rng.randint(1, 5), 20) for _ in range(3)]
        if sum(lams) >= 1:
            continue
        p = [sum(l * v[i] for l, v in zip(lams, tet.vertices)) for i in range(3)]
        assert tet.classify(p) == INTERIOR


def test_lattice_points_motzkin_half():
    hull = GeneralPolytope([(0, 0), (2, 1), (1, 2)])
    assert hull.lattice_points() == [(0, 0), (1, 1), (1, 2), (2, 1)]


def test_lattice_points_single_point_and_bigger_triangle():
    assert GeneralPolytope([(3, 4)]).lattice_points() == [(3, 4)]
    hull = GeneralPolytope([(0, 0), (3, 1), (1, 2)])
    assert hull.lattice_points() == [(0, 0), (1, 1), (1, 2), (2, 1), (3, 1)]


def test_lattice_points_closed_under_membership():
    hull = GeneralPolytope([(0, 0), (6, 2), (2, 4)])
    pts = hull.lattice_points()
    for p in pts:
        assert hull.member(p)
    for g in hull.generators:
        assert g in pts


def test_distinct_pair_witness_motzkin():
    motzkin_hull = GeneralPolytope([(0, 0), (4, 2), (2, 4), (2, 2)])
    assert motzkin_hull.distinct_pair_witness((2, 2)) is None


def test_distinct_pair_witness_scaled_triangle():
    hull = GeneralPolytope([(0, 0), (6, 2), (2, 4)])
    assert hull.distinct_pair_witness((2, 2)) is None


def test_distinct_pair_witness_found():
    hull = GeneralPolytope([(0, 0), (4, 0), (0, 4)])
    pair = hull.distinct_pair_witness((1, 1))
    assert pair is not None
    t1, t2 = pair
    assert t1 != t2
    assert tuple(a + b for a, b in zip(t1, t2)) == (1, 1)
    assert hull.member(tuple(2 * x for x in t1))
    assert hull.member(tuple(2 * x for x in t2))


def test_witness_pair_postconditions_random():
    rng = random.Random(31)
    for _ in range(40):
        gens = [(0, 0)] + [
            (rng.randint(0, 6), rng.randint(0, 6)) for _ in range(rng.randint(2, 5))
        ]
        hull = GeneralPolytope(gens)
        m = (rng.randint(0, 8), rng.randint(0, 8))
        pair = hull.distinct_pair_witness(m)
        if pair is None:
            continue
        t1, t2 = pair
        assert t1 != t2
        assert tuple(a + b for a, b in zip(t1, t2)) == m
        assert hull.member(tuple(2 * x for x in t1))
        assert hull.member(tuple(2 * x for x in t2))

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import assume, given, settings, strategies as st

import oracles
from eqalg.rational import Constraint, RationalCone, nullspace, rank, rref, solve, vec

small = st.integers(-3, 3)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(small) for _ in range(c)] for _ in range(r)]


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_rank_and_nullspace_against_sympy(m):
    assert rank(m) == oracles.sympy_rank(m)
    ns = nullspace(m, len(m[0]))
    assert len(ns) == len(m[0]) - rank(m)
    for v in ns:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in m)


def test_rref_shape():
    red, pivots = rref([[2, 4, 6], [1, 2, 4]])
    assert pivots == [0, 2]
    assert red == [vec([1, 2, 0]), vec([0, 0, 1])]


def test_solve():
    x = solve([[2, 1], [1, 3]], [3, 5])
    assert x == vec([Fraction(4, 5), Fraction(7, 5)])


@st.composite
def pointed_cones(draw):
    dim = draw(st.integers(1, 4))
    # the orthant rows keep the cone pointed; extra rows cut it down
    ge = [[int(i == j) for j in range(dim)] for i in range(dim)]
    ge += [[draw(small) for _ in range(dim)] for _ in range(draw(st.integers(0, 4)))]
    eq = [[draw(small) for _ in range(dim)] for _ in range(draw(st.integers(0, 1)))]
    return dim, eq, ge


def _cone(dim, eq, ge):
    cons = [Constraint("eq", vec(r)) for r in eq] + [Constraint("ge", vec(r)) for r in ge]
    return RationalCone.from_constraints(dim, cons)


@settings(max_examples=250, deadline=None)
@given(pointed_cones())
def test_extreme_rays_match_brute_force(data):
    dim, eq, ge = data
    cone = _cone(dim, eq, ge)
    assert cone.is_pointed()
    assert list(cone.rays) == oracles.extreme_rays(eq, ge, dim)


@settings(max_examples=100, deadline=None)
@given(pointed_cones())
def test_generators_to_constraints_is_a_fixpoint(data):
    cone = _cone(*data)
    again = RationalCone.from_generators(cone.dim, cone.lineality, cone.rays)
    assert again.same_set(cone)
    assert RationalCone.parse(cone.serialize()).same_set(cone)


def test_membership_on_grid():
    cone = _cone(3, [], [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0], [0, 1, -2]])
    grid = [Fraction(p, q) for q in (1, 2, 3, 4) for p in range(-4, 5)]
    for x in product(sorted(set(grid)), repeat=3):
        direct = x[0] >= 0 and x[1] >= 0 and x[2] >= 0 and x[0] >= x[1] and x[1] >= 2 * x[2]
        assert cone.contains(x) == direct
        assert cone.facets().contains(x) == direct


def test_lineality_space():
    # x + y >= 0 in the plane: a half-plane with a line through the origin
    cone = _cone(2, [], [[1, 1]])
    assert cone.lineality == (vec([1, -1]),)
    assert cone.rays == (vec([1, 1]),)
    assert not cone.is_pointed()
    assert cone.contains([5, -5]) and not cone.contains([-1, 0])


def test_whole_space_and_zero_cone():
    full = RationalCone.from_constraints(2, [])
    assert len(full.lineality) == 2 and not full.rays
    zero = _cone(2, [[1, 0], [0, 1]], [])
    assert zero.lineality == () and zero.rays == ()


def test_subset_and_intersection():
    quad = _cone(2, [], [[1, 0], [0, 1]])
    wedge = _cone(2, [], [[1, -1], [0, 1]])
    assert wedge.subset_of(quad) and not quad.subset_of(wedge)
    assert quad.intersect(wedge).same_set(wedge)


def test_ray_normalization_and_order():
    cone = RationalCone.from_generators(2, [], [[3, 0], [2, 6]])
    assert cone.rays == (vec([1, 0]), vec([1, 3]))


def test_serialize_format():
    cone = RationalCone.from_generators(3, [], [[2, 1, 0]])
    assert cone.serialize() == "dim 3\nR 1 1/2 0\n"


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        RationalCone.parse("dim 2\nX 1 0\n")
    with pytest.raises(ValueError):
        RationalCone.parse("R 1 0\n")


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        RationalCone.from_constraints(2, [Constraint("ge", vec([1, 0, 0]))])


@settings(max_examples=100, deadline=None)
@given(pointed_cones(), st.lists(st.integers(0, 5), min_size=1, max_size=6))
def test_nonnegative_combinations_stay_inside(data, weights):
    cone = _cone(*data)
    assume(cone.rays)
    point = [sum(w * r[i] for w, r in zip(weights, cone.rays)) for i in range(cone.dim)]
    assert cone.contains(point)

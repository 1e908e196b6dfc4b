from fractions import Fraction
from itertools import product

import pytest

from conftest import corpus
from eqalg.core import chain, diamond, is_commutative, is_invariant_scan, trivial
from eqalg.dedsys import ElementSet, enumerate_ds
from eqalg.errors import PreconditionError
from eqalg.rational import vec
from eqalg.cones import (RationalFn, is_commutative_valuation, is_measure, is_measure_morphism,
                         is_order_determining, is_strict_valuation, is_valuation, ds_valuation,
                         measure_cone, measure_kernel, measure_morphisms, measure_suite,
                         measure_witness, measures_are_morphisms, quotient_by_measure,
                         translation_suite, valuation_cone, valuation_kernel, valuation_suite)

ZERO, A, B, ONE = range(4)


def direct_measure(alg, m):
    if m[alg.top] != 0 or any(v < 0 for v in m):
        return False
    for x, y in product(alg.elements, repeat=2):
        if alg.leq(y, x):
            d = m[y] - m[x]
            if m[alg.sim[y][x]] != d or m[alg.bsim[x][y]] != d:
                return False
    return True


def direct_morphism(alg, m):
    if m[alg.top] != 0 or any(v < 0 for v in m):
        return False
    for x, y in product(alg.elements, repeat=2):
        xy = alg.meet[x][y]
        want = max(Fraction(0), m[y] - m[x])
        if m[alg.sim[xy][x]] != want or m[alg.bsim[x][xy]] != want:
            return False
    return True


def test_fixture_measure_cone(dia):
    cone = measure_cone(dia)
    assert cone.lineality == ()
    assert cone.rays == (vec([1, 0, 1, 0]), vec([1, 1, 0, 0]))
    for alpha, beta in [(2, 1), (1, 1), (3, 0), (Fraction(5, 2), Fraction(1, 3))]:
        assert cone.contains([alpha, beta, alpha - beta, 0])
    assert not cone.contains([1, 2, -1, 0])


def test_trivial_cone_is_zero():
    cone = measure_cone(trivial())
    assert cone.lineality == () and cone.rays == ()


def test_pointwise_examples(dia):
    assert is_measure(dia, (1, 1, 0, 0)) and is_measure_morphism(dia, (1, 1, 0, 0))
    assert is_measure(dia, (0, 0, 0, 0)) and is_measure_morphism(dia, (0, 0, 0, 0))
    assert not is_measure(dia, (1, 0, 0, 0))
    # both (0,a) and (0,b) violate; the first witness in scan order is reported
    assert measure_witness(dia, (1, 0, 0, 0)) == (ZERO, A)


def test_fixture_measures_are_not_all_morphisms(dia):
    """Interior points of the measure cone fail the max{0, .} condition."""
    u = (1, Fraction(1, 2), Fraction(1, 2), 0)
    assert is_measure(dia, u) and direct_measure(dia, u)
    assert not is_measure_morphism(dia, u) and not direct_morphism(dia, u)
    gap = measures_are_morphisms(dia)
    assert not gap.holds
    assert is_measure(dia, gap.witness) and not is_measure_morphism(dia, gap.witness)
    mm = measure_morphisms(dia)
    assert mm.generators() == [vec([1, 0, 1, 0]), vec([1, 1, 0, 0])]
    for g in measure_cone(dia).rays:
        assert is_measure_morphism(dia, g)


def _grid():
    vals = sorted({Fraction(p, q) for q in (1, 2, 3, 4) for p in range(0, 2 * q + 1)} | {Fraction(-1, 2)})
    return vals


def test_cone_membership_matches_direct_evaluation():
    vals = [v for v in _grid() if v <= 1]
    for alg in corpus(3) + (diamond(),):
        cone = measure_cone(alg)
        mm = measure_morphisms(alg)
        pts = product(vals, repeat=alg.n) if alg.n <= 3 else (
            p for p in product(vals[:7], repeat=alg.n))
        for p in pts:
            assert cone.contains(p) == direct_measure(alg, p) == is_measure(alg, p)
            assert mm.contains(p) == direct_morphism(alg, p) == is_measure_morphism(alg, p)


def test_kernels(dia):
    assert measure_kernel(dia, (1, 1, 0, 0)).members() == (B, ONE)
    assert measure_kernel(dia, (1, 0, 1, 0)).members() == (A, ONE)
    assert measure_kernel(dia, (0, 0, 0, 0)) == ElementSet.full(4)
    with pytest.raises(PreconditionError):
        measure_kernel(dia, (1, 0, 0, 0))


def test_quotient_by_measure(dia):
    q, hat = quotient_by_measure(dia, (1, 1, 0, 0))
    assert q.classes == ((ZERO, A), (B, ONE))
    assert tuple(hat) == (1, 0)
    q, hat = quotient_by_measure(dia, (0, 0, 0, 0))
    assert q.algebra.n == 1 and tuple(hat) == (0,)
    c = chain(3)
    f = measure_cone(c).rays[0]
    assert measure_kernel(c, f).members() == (2,)
    q, hat = quotient_by_measure(c, f)
    assert q.classes == ((0,), (1,), (2,)) and tuple(hat) == tuple(f)


def test_quotient_by_measure_needs_invariance():
    for alg in corpus(4):
        if not is_invariant_scan(alg):
            with pytest.raises(PreconditionError):
                quotient_by_measure(alg, [0] * alg.n)
            return
    pytest.fail("corpus has no non-invariant algebra")


def test_order_determining(dia):
    assert is_order_determining(dia, measure_cone(dia).rays).holds
    zero = is_order_determining(dia, [(0, 0, 0, 0)])
    assert not zero.holds and zero.witness is not None
    with pytest.raises(PreconditionError):
        is_order_determining(dia, [(1, 0, 0, 0)])


def test_order_determining_forces_commutativity():
    for alg in corpus(4):
        gens = measure_cone(alg).rays or [(0,) * alg.n]
        if is_order_determining(alg, gens).holds:
            assert is_commutative(alg)


def test_valuations_on_fixture(dia):
    f = ds_valuation(dia, ElementSet.of(4, [A, ONE]), 2)
    assert tuple(f) == (2, 0, 2, 0)
    assert is_valuation(dia, f)
    assert valuation_kernel(dia, f).members() == (A, ONE)
    assert is_commutative_valuation(dia, f)
    assert valuation_kernel(dia, (0, 0, 0, 0)) == ElementSet.full(4)
    assert valuation_cone(dia).contains(f)
    assert valuation_cone(dia).same_set(valuation_cone(dia, commutative=True))
    assert not is_strict_valuation(dia, f)


def test_valuation_generators_nonnegative():
    for alg in corpus(4):
        for g in valuation_cone(alg).rays:
            assert all(v >= 0 for v in g)
            assert is_valuation(alg, g)
        assert valuation_cone(alg).contains([0] * alg.n)


def test_ds_valuations_for_every_system():
    for alg in corpus(3) + (diamond(), chain(4)):
        for r in enumerate_ds(alg):
            for a in (0, 1, 2, Fraction(7, 2)):
                f = ds_valuation(alg, r.set, a)
                assert is_valuation(alg, f)
                if a:
                    assert valuation_kernel(alg, f) == r.set


def test_ds_valuation_rejects_bad_input(dia):
    with pytest.raises(PreconditionError):
        ds_valuation(dia, ElementSet.of(4, [A]), 1)
    with pytest.raises(PreconditionError):
        ds_valuation(dia, ElementSet.of(4, [ONE]), -1)


def test_suites_on_fixture_and_chains():
    for alg in (diamond(), trivial(), chain(4)):
        assert measure_suite(alg).passed
        assert valuation_suite(alg).passed
        assert translation_suite(alg).passed


def test_function_dimension_is_checked(dia):
    with pytest.raises(PreconditionError):
        is_measure(dia, (0, 0, 0))
    assert RationalFn([1, 0]).render() == "(1, 0)"

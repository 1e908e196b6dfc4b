from itertools import combinations

import pytest

import oracles
from conftest import corpus
from eqalg.core import FiniteEqAlgebra, chain, diamond, is_commutative, is_invariant_scan, trivial, verify_axioms
from eqalg.dedsys import (ElementSet, all_congruences, check_quotient_commutativity_theorem,
                          commutativity_via_systems, congruence_lattice_report, congruence_of,
                          ds_consequences_suite, enumerate_ds, enumerate_ds_bruteforce, generate_ds,
                          is_closed_ds, is_commutative_ds, is_congruence, is_ds, is_normal_ds,
                          is_simple, quotient_by_relation, theta, top_class)
from eqalg.errors import CongruenceError, PreconditionError
from eqalg.search import find_isomorphism

ZERO, A, B, ONE = range(4)


def S(*xs, n=4):
    return ElementSet.of(n, xs)


def test_element_set_basics():
    s = S(1, 3)
    assert 3 in s and 0 not in s
    assert list(s) == [1, 3] and len(s) == 2
    assert S(3) < s <= s and not s < s
    assert (s | S(0)).members() == (0, 1, 3)
    assert (s & S(1, 2)).members() == (1,)
    assert s.render(("0", "a", "b", "1")) == "{a,1}"
    with pytest.raises(PreconditionError):
        S(4)


def test_fixture_systems(dia):
    recs = enumerate_ds(dia)
    assert [r.set.members() for r in recs] == [(ONE,), (A, ONE), (B, ONE), (0, 1, 2, 3)]
    assert all(r.is_normal and r.is_commutative and r.is_closed for r in recs)
    assert [r.is_maximal for r in recs] == [False, True, True, False]
    assert [r.is_proper for r in recs] == [True, True, True, False]


def test_trivial_and_small_chains():
    assert [r.set.members() for r in enumerate_ds(trivial())] == [(0,)]
    assert is_simple(chain(2))
    # finite Lukasiewicz chains are simple: 0 ~ 1 = 1 drags 0 into any system holding 1
    for k in (3, 4, 5):
        c = chain(k)
        assert is_simple(c)
        assert len(oracles.deductive_systems(c.meet, c.sim, c.top)) == 2
    assert not is_simple(diamond())


def test_enumeration_matches_oracles():
    for alg in corpus(4) + (chain(4), chain(5)):
        mine = [r.set.members() for r in enumerate_ds(alg)]
        brute = [s.members() for s in enumerate_ds_bruteforce(alg)]
        ref = sorted((tuple(sorted(d)) for d in oracles.deductive_systems(alg.meet, alg.sim, alg.top)),
                     key=lambda t: (len(t), t))
        assert mine == brute == ref


def test_generate_ds(dia):
    assert generate_ds(dia, S(A)).members() == (A, ONE)
    assert generate_ds(dia, S()).members() == (ONE,)
    assert generate_ds(dia, S(ZERO)).members() == (0, 1, 2, 3)


def test_generate_ds_is_least_system():
    for alg in corpus(4):
        systems = [r.set for r in enumerate_ds(alg)]
        for k in range(alg.n + 1):
            for seed in combinations(alg.elements, k):
                s = ElementSet.of(alg.n, seed)
                expected = ElementSet.full(alg.n)
                for d in systems:
                    if s <= d:
                        expected = expected & d
                assert generate_ds(alg, s) == expected


def test_closed_criterion_and_flags():
    for alg in corpus(4):
        for r in enumerate_ds(alg):
            d = r.set
            short = all(alg.sim[alg.top][x] in d and alg.bsim[x][alg.top] in d for x in d)
            assert is_closed_ds(alg, d) == short


def test_commutative_ds_needs_a_ds(dia):
    assert is_commutative_ds(dia, S(ONE))
    assert is_commutative_ds(dia, ElementSet.full(4))
    with pytest.raises(PreconditionError):
        is_commutative_ds(dia, S(A))


def test_quotients_of_fixture(dia):
    q = congruence_of(dia, S(A, ONE))
    assert q.classes == ((ZERO, B), (A, ONE))
    assert q.algebra.n == 2 and verify_axioms(q.algebra).passed
    ident = congruence_of(dia, S(ONE))
    assert find_isomorphism(ident.algebra, dia) is not None
    assert congruence_of(dia, ElementSet.full(4)).algebra.n == 1


def test_projection_is_homomorphism():
    for alg in corpus(4):
        if not is_invariant_scan(alg):
            continue
        for r in enumerate_ds(alg):
            if not r.is_normal:
                continue
            q = congruence_of(alg, r.set)
            p, Q = q.projection, q.algebra
            for x in alg.elements:
                for y in alg.elements:
                    assert p[alg.meet[x][y]] == Q.meet[p[x]][p[y]]
                    assert p[alg.sim[x][y]] == Q.sim[p[x]][p[y]]
                    assert p[alg.bsim[x][y]] == Q.bsim[p[x]][p[y]]
            assert p[alg.top] == Q.top


def test_congruence_of_rejects_non_normal():
    found = False
    for alg in corpus(4):
        for r in enumerate_ds(alg):
            if not r.is_normal:
                found = True
                with pytest.raises(PreconditionError):
                    congruence_of(alg, r.set)
    assert found


def test_bad_relation_raises_congruence_error(dia):
    rel = {(x, x) for x in range(4)} | {(ZERO, A), (A, ZERO)}
    assert not is_congruence(dia, rel)
    with pytest.raises(CongruenceError):
        quotient_by_relation(dia, rel)


def test_theta_top_class_round_trip_for_closed_normal():
    for alg in corpus(4):
        for r in enumerate_ds(alg):
            if r.is_normal and r.is_closed:
                assert top_class(alg, theta(alg, r.set)) == r.set


def test_congruence_lattice_report_on_corpus():
    for alg in corpus(4):
        assert congruence_lattice_report(alg).passed


def test_invariant_congruences_come_from_systems():
    for alg in corpus(4):
        if not is_invariant_scan(alg):
            continue
        normals = {r.set for r in enumerate_ds(alg) if r.is_normal}
        for rel in all_congruences(alg):
            h = top_class(alg, rel)
            assert h in normals
            assert theta(alg, h) == set(rel)


def test_commutativity_via_systems():
    for alg in corpus(4):
        assert commutativity_via_systems(alg).passed
        comm = is_commutative(alg)
        assert comm == is_commutative_ds(alg, ElementSet.of(alg.n, [alg.top]))
        assert comm == all(r.is_commutative for r in enumerate_ds(alg))


def test_consequences_suite():
    for alg in corpus(4) + (chain(5),):
        assert ds_consequences_suite(alg).passed


def test_quotient_theorem_on_fixture_and_invariant_corpus():
    assert check_quotient_commutativity_theorem(diamond()).passed
    assert check_quotient_commutativity_theorem(trivial()).passed
    for alg in corpus(4):
        if is_invariant_scan(alg):
            assert check_quotient_commutativity_theorem(alg).passed


def test_membership_rules_agree_on_every_subset():
    for alg in corpus(3):
        for k in range(alg.n + 1):
            for sub in combinations(alg.elements, k):
                d = ElementSet.of(alg.n, sub)
                ref = frozenset(sub) in set(oracles.deductive_systems(alg.meet, alg.sim, alg.top))
                assert is_ds(alg, d) == ref
                if ref:
                    is_normal_ds(alg, d)


def test_normal_non_closed_system_with_non_commutative_quotient():
    """A 3-element non-invariant algebra where a commutative normal system
    gives a non-commutative quotient.  Every fact is recomputed here from
    the definitions, independently of the package."""
    meet = [[0, 0, 0], [0, 1, 1], [0, 1, 2]]
    sim = [[2, 0, 0], [1, 2, 1], [1, 0, 2]]
    bsim = [[2, 1, 1], [0, 2, 0], [0, 1, 2]]
    h = {1, 2}
    assert oracles.axioms_hold(meet, sim, bsim, 2)
    assert frozenset(h) in oracles.deductive_systems(meet, sim, 2)
    pairs = [(x, y) for x in range(3) for y in range(3)]
    # normal: both equalities detect the same pairs
    assert all((sim[x][y] in h and sim[y][x] in h) == (bsim[y][x] in h and bsim[x][y] in h)
               for x, y in pairs)
    # commutative system, straight from the two defining implications
    for x, y in pairs:
        xy = meet[x][y]
        if sim[xy][y] in h:
            assert sim[x][bsim[sim[xy][x]][y]] in h
        if bsim[y][xy] in h:
            assert bsim[sim[y][bsim[x][xy]]][x] in h
    # the induced relation is the identity, so the quotient is the algebra itself
    rel = {(x, y) for x, y in pairs if sim[x][y] in h and sim[y][x] in h}
    assert rel == {(x, x) for x in range(3)}
    assert not oracles.commutative(meet, sim, bsim)
    # the top class of the relation is {top}, not h: h is not closed
    assert sim[2][1] not in h

    alg = FiniteEqAlgebra(meet=meet, sim=sim, bsim=bsim, top=2)
    report = check_quotient_commutativity_theorem(alg)
    assert report.labels() == ["quotient-commutativity"]

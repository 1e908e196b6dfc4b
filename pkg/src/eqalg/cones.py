"""Measures, measure-morphisms and pseudo-valuations as exact rational cones.

Measure-morphisms are not a cone (the defining condition involves a max),
so they are handled as a union of pieces: one cone per ordering of the
element values, on which every max collapses to a linear form.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Iterable, Optional, Sequence, Union

from .core import (AxiomReport, Check, FiniteEqAlgebra, Witness, is_commutative,
                   is_invariant_scan, is_linear, require_valid, vee1, vee2)
from .dedsys import (ElementSet, QuotientResult, congruence_of, enumerate_ds, is_commutative_ds,
                     is_ds, is_normal_ds)
from .errors import PreconditionError, TheoremViolation
from .rational import Constraint, RationalCone, Vec, vec
from .translate import FiniteBckAlgebra, phi, psi


@dataclass(frozen=True)
class RationalFn:
    """A rational-valued function on the carrier, indexed by element."""

    values: Vec

    def __init__(self, values: Iterable):
        object.__setattr__(self, "values", vec(values))

    @property
    def n(self) -> int:
        return len(self.values)

    def __getitem__(self, x: int) -> Fraction:
        return self.values[x]

    def __iter__(self):
        return iter(self.values)

    def zero_set(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.values) if v == 0)

    def render(self) -> str:
        return "(" + ", ".join(str(v) for v in self.values) + ")"


FnLike = Union[RationalFn, Sequence]


def as_fn(f: FnLike, n: int) -> RationalFn:
    f = f if isinstance(f, RationalFn) else RationalFn(f)
    if f.n != n:
        raise PreconditionError(f"function has {f.n} values, carrier has {n} elements")
    return f


def _lin(n: int, *pairs: tuple[int, int]) -> Vec:
    """Sum of c * m(i) over (i, c) pairs, as a coefficient vector."""
    v = [0] * n
    for i, c in pairs:
        v[i] += c
    return vec(v)


def _unit_rows(n: int, top: int) -> list[Constraint]:
    return [Constraint("eq", _lin(n, (top, 1)))]


def _nonneg_rows(n: int) -> list[Constraint]:
    return [Constraint("ge", _lin(n, (i, 1))) for i in range(n)]


# -- generic recipes shared by both sides -----------------------------------------
# ``left(x, y)`` and ``right(x, y)`` are the two "distance" terms: on the
# equality side x∧y ∼ x and x ⤙ x∧y, on the BCK side x -> y and x ~> y.

def _measure_rows(n, top, leq, left, right) -> list[Constraint]:
    rows = _unit_rows(n, top) + _nonneg_rows(n)
    for x, y in product(range(n), repeat=2):
        if leq(y, x):
            for t in (left(x, y), right(x, y)):
                # m(t) - m(y) + m(x) == 0
                rows.append(Constraint("eq", _lin(n, (t, 1), (y, -1), (x, 1))))
    return rows


def _valuation_rows(n, top, left, right) -> list[Constraint]:
    rows = _unit_rows(n, top)
    for x, y in product(range(n), repeat=2):
        for t in (left(x, y), right(x, y)):
            # phi(t) - phi(y) + phi(x) >= 0
            rows.append(Constraint("ge", _lin(n, (t, 1), (y, -1), (x, 1))))
    return rows


def _morphism_piece_rows(n, order, left, right) -> list[Constraint]:
    """Measure-morphism conditions on the region m(order[0]) >= m(order[1]) >= ..."""
    pos = {e: i for i, e in enumerate(order)}
    rows = _nonneg_rows(n)
    for a, b in zip(order, order[1:]):
        rows.append(Constraint("ge", _lin(n, (a, 1), (b, -1))))
    for x, y in product(range(n), repeat=2):
        for t in (left(x, y), right(x, y)):
            if pos[y] <= pos[x]:  # m(y) >= m(x) here, so the max is m(y) - m(x)
                rows.append(Constraint("eq", _lin(n, (t, 1), (y, -1), (x, 1))))
            else:
                rows.append(Constraint("eq", _lin(n, (t, 1))))
    return rows


def _eqa_terms(alg: FiniteEqAlgebra):
    M, S, B = alg.meet, alg.sim, alg.bsim
    return (lambda x, y: S[M[x][y]][x]), (lambda x, y: B[x][M[x][y]])


def _bck_terms(b: FiniteBckAlgebra):
    return (lambda x, y: b.arrow[x][y]), (lambda x, y: b.squig[x][y])


# -- measures ---------------------------------------------------------------------

def measure_cone(alg: FiniteEqAlgebra) -> RationalCone:
    require_valid(alg, "measure_cone")
    S, B = alg.sim, alg.bsim
    # written with the raw equalities, y <= x: m(y ~ x) = m(x ~' y) = m(y) - m(x)
    rows = _measure_rows(alg.n, alg.top, alg.leq, lambda x, y: S[y][x], lambda x, y: B[x][y])
    return RationalCone.from_constraints(alg.n, rows)


def bck_measure_cone(b: FiniteBckAlgebra) -> RationalCone:
    left, right = _bck_terms(b)
    return RationalCone.from_constraints(b.n, _measure_rows(b.n, b.top, b.leq, left, right))


def measure_witness(alg: FiniteEqAlgebra, f: FnLike) -> Optional[Witness]:
    """First failing (y, x) with y <= x, or (x,) for a negative value."""
    f = as_fn(f, alg.n)
    for x in alg.elements:
        if f[x] < 0:
            return (x,)
    for y, x in product(alg.elements, repeat=2):
        if alg.leq(y, x):
            d = f[y] - f[x]
            if f[alg.sim[y][x]] != d or f[alg.bsim[x][y]] != d:
                return (y, x)
    return None


def is_measure(alg: FiniteEqAlgebra, f: FnLike) -> bool:
    return measure_witness(alg, f) is None


def _morphism_witness(n, f, left, right) -> Optional[Witness]:
    for x in range(n):
        if f[x] < 0:
            return (x,)
    for x, y in product(range(n), repeat=2):
        target = max(Fraction(0), f[y] - f[x])
        if f[left(x, y)] != target or f[right(x, y)] != target:
            return (x, y)
    return None


def is_measure_morphism(alg: FiniteEqAlgebra, f: FnLike) -> bool:
    f = as_fn(f, alg.n)
    left, right = _eqa_terms(alg)
    ok = _morphism_witness(alg.n, f, left, right) is None
    if ok and not is_measure(alg, f):
        raise TheoremViolation("a measure-morphism that is not a measure", tuple(f))
    return ok


def is_bck_measure(b: FiniteBckAlgebra, f: FnLike) -> bool:
    f = as_fn(f, b.n)
    if any(v < 0 for v in f):
        return False
    return all(f[b.arrow[x][y]] == f[y] - f[x] == f[b.squig[x][y]]
               for x, y in product(b.elements, repeat=2) if b.leq(y, x))


def is_bck_measure_morphism(b: FiniteBckAlgebra, f: FnLike) -> bool:
    left, right = _bck_terms(b)
    return _morphism_witness(b.n, as_fn(f, b.n), left, right) is None


@dataclass(frozen=True)
class PiecewiseCone:
    """A union of cones, one per total preorder region of the coordinates.

    Two piecewise sets over the same regions are compared region by region,
    which is exact because the regions cover the whole orthant.
    """

    dim: int
    pieces: tuple[tuple[tuple[int, ...], RationalCone], ...]

    def contains(self, f: Sequence) -> bool:
        return any(c.contains(f) for _, c in self.pieces)

    def subset_of(self, other: "PiecewiseCone") -> bool:
        theirs = dict(other.pieces)
        return all(c.subset_of(theirs[k]) for k, c in self.pieces)

    def same_set(self, other: "PiecewiseCone") -> bool:
        theirs = dict(other.pieces)
        return all(c.same_set(theirs[k]) for k, c in self.pieces)

    def inside_cone(self, cone: RationalCone) -> bool:
        return all(c.subset_of(cone) for _, c in self.pieces)

    def generators(self) -> list[Vec]:
        seen = set()
        for _, c in self.pieces:
            seen.update(c.generators())
        return sorted(seen)


def _pieces(n, left, right) -> PiecewiseCone:
    if n > 7:
        raise PreconditionError("piecewise measure-morphism sets are limited to 7 elements")
    out = []
    for order in permutations(range(n)):
        rows = _morphism_piece_rows(n, order, left, right)
        out.append((order, RationalCone.from_constraints(n, rows)))
    return PiecewiseCone(n, tuple(out))


def measure_morphisms(alg: FiniteEqAlgebra) -> PiecewiseCone:
    require_valid(alg, "measure_morphisms")
    return _pieces(alg.n, *_eqa_terms(alg))


def bck_measure_morphisms(b: FiniteBckAlgebra) -> PiecewiseCone:
    return _pieces(b.n, *_bck_terms(b))


def measures_are_morphisms(alg: FiniteEqAlgebra) -> Check:
    """Whether every measure is a measure-morphism; the witness is a measure
    that is not one.  The reverse inclusion is checked in measure_suite."""
    cone = measure_cone(alg)
    mm = measure_morphisms(alg)
    base = cone.constraints
    for order, piece in mm.pieces:
        region = [Constraint("ge", _lin(alg.n, (a, 1), (b, -1))) for a, b in zip(order, order[1:])]
        part = RationalCone.from_constraints(alg.n, tuple(base) + tuple(region))
        for g in part.generators():
            if not piece.contains(g):
                return Check(False, g)
    return Check(True, None)


def measure_kernel(alg: FiniteEqAlgebra, f: FnLike) -> ElementSet:
    f = as_fn(f, alg.n)
    w = measure_witness(alg, f)
    if w is not None:
        raise PreconditionError("not a measure", w)
    ker = ElementSet.of(alg.n, f.zero_set())
    if not is_ds(alg, ker):
        raise TheoremViolation("measure kernel is not a deductive system", ker.members())
    if not is_commutative_ds(alg, ker):
        raise TheoremViolation("measure kernel is not commutative", ker.members())
    if is_invariant_scan(alg) and not is_normal_ds(alg, ker):
        raise TheoremViolation("measure kernel of an invariant algebra is not normal", ker.members())
    return ker


def quotient_by_measure(alg: FiniteEqAlgebra, f: FnLike) -> tuple[QuotientResult, RationalFn]:
    f = as_fn(f, alg.n)
    if not is_invariant_scan(alg):
        raise PreconditionError("quotient_by_measure needs an invariant algebra")
    ker = measure_kernel(alg, f)
    q = congruence_of(alg, ker)
    values = []
    for cls in q.classes:
        vals = {f[x] for x in cls}
        if len(vals) != 1:
            raise TheoremViolation("induced measure is not well defined", cls)
        values.append(vals.pop())
    hat = RationalFn(values)
    if not is_commutative(q.algebra):
        raise TheoremViolation("quotient by a measure kernel is not commutative", ker.members())
    w = measure_witness(q.algebra, hat)
    if w is not None:
        raise TheoremViolation("induced function is not a measure on the quotient", w)
    return q, hat


def is_order_determining(alg: FiniteEqAlgebra, fns: Iterable[FnLike]) -> Check:
    """Joint reading: if every m has m(x) >= m(y) then x <= y."""
    fns = [as_fn(f, alg.n) for f in fns]
    for f in fns:
        w = measure_witness(alg, f)
        if w is not None:
            raise PreconditionError(f"{f.render()} is not a measure", w)
    for x, y in product(alg.elements, repeat=2):
        if all(f[x] >= f[y] for f in fns) and not alg.leq(x, y):
            return Check(False, (x, y))
    return Check(True, None)


# -- pseudo-valuations ------------------------------------------------------------

def _cpv_rows(alg: FiniteEqAlgebra) -> list[Constraint]:
    M, S, B, n = alg.meet, alg.sim, alg.bsim, alg.n
    rows = []
    for x, y in product(alg.elements, repeat=2):
        xy = M[x][y]
        # phi(x ~ x v1 y) <= phi(x meet y ~ y)
        rows.append(Constraint("ge", _lin(n, (S[xy][y], 1), (S[x][vee1(alg, x, y)], -1))))
        # phi(x v2 y ~' x) <= phi(y ~' x meet y)
        rows.append(Constraint("ge", _lin(n, (B[y][xy], 1), (B[vee2(alg, x, y)][x], -1))))
    return rows


def valuation_cone(alg: FiniteEqAlgebra, commutative: bool = False) -> RationalCone:
    require_valid(alg, "valuation_cone")
    rows = _valuation_rows(alg.n, alg.top, *_eqa_terms(alg))
    if commutative:
        rows += _cpv_rows(alg)
    cone = RationalCone.from_constraints(alg.n, rows)
    for g in cone.generators():
        if any(v < 0 for v in g):
            raise TheoremViolation("pseudo-valuation cone has a negative generator", g)
    return cone


def bck_valuation_cone(b: FiniteBckAlgebra) -> RationalCone:
    return RationalCone.from_constraints(b.n, _valuation_rows(b.n, b.top, *_bck_terms(b)))


def valuation_witness(alg: FiniteEqAlgebra, f: FnLike) -> Optional[Witness]:
    f = as_fn(f, alg.n)
    if f[alg.top] != 0:
        return (alg.top,)
    left, right = _eqa_terms(alg)
    for x, y in product(alg.elements, repeat=2):
        if f[y] - f[x] > min(f[left(x, y)], f[right(x, y)]):
            return (x, y)
    return None


def is_valuation(alg: FiniteEqAlgebra, f: FnLike) -> bool:
    return valuation_witness(alg, f) is None


def _cpv12(alg, f) -> bool:
    M, S, B = alg.meet, alg.sim, alg.bsim
    for x, y in product(alg.elements, repeat=2):
        xy = M[x][y]
        if f[S[x][vee1(alg, x, y)]] > f[S[xy][y]]:
            return False
        if f[B[vee2(alg, x, y)][x]] > f[B[y][xy]]:
            return False
    return True


def _cpv34(alg, f) -> bool:
    M, S, B = alg.meet, alg.sim, alg.bsim
    for x, y, z in product(alg.elements, repeat=3):
        xy = M[x][y]
        w1 = S[xy][y]
        w2 = B[y][xy]
        if f[S[x][vee1(alg, x, y)]] > f[B[z][M[w1][z]]] + f[z]:
            return False
        if f[B[vee2(alg, x, y)][x]] > f[S[M[w2][z]][z]] + f[z]:
            return False
    return True


def is_commutative_valuation(alg: FiniteEqAlgebra, f: FnLike) -> bool:
    f = as_fn(f, alg.n)
    if not is_valuation(alg, f):
        return False
    by_def = _cpv12(alg, f)
    if by_def != _cpv34(alg, f):
        raise TheoremViolation("commutative-valuation criteria disagree", tuple(f))
    return by_def


def valuation_kernel(alg: FiniteEqAlgebra, f: FnLike) -> ElementSet:
    f = as_fn(f, alg.n)
    w = valuation_witness(alg, f)
    if w is not None:
        raise PreconditionError("not a pseudo-valuation", w)
    ker = ElementSet.of(alg.n, f.zero_set())
    if not is_ds(alg, ker):
        raise TheoremViolation("pseudo-valuation kernel is not a deductive system", ker.members())
    if is_commutative_valuation(alg, f) and not is_commutative_ds(alg, ker):
        raise TheoremViolation("commutative pseudo-valuation kernel is not commutative", ker.members())
    return ker


def is_strict_valuation(alg: FiniteEqAlgebra, f: FnLike) -> bool:
    """A pseudo-valuation vanishing only at top."""
    return valuation_kernel(alg, f) == ElementSet.of(alg.n, [alg.top])


def ds_valuation(alg: FiniteEqAlgebra, d: ElementSet, a) -> RationalFn:
    """0 on the system, the constant ``a`` >= 0 elsewhere."""
    a = Fraction(a)
    if a < 0:
        raise PreconditionError("the constant must be nonnegative")
    if not is_ds(alg, d):
        raise PreconditionError("not a deductive system", d.members())
    return RationalFn(0 if x in d else a for x in alg.elements)


# -- suites -----------------------------------------------------------------------

def _subset_sums(gens: Sequence[Vec], cap: int = 10) -> list[Vec]:
    """Sums over every nonempty subset of generators (all of them when few)."""
    gens = list(gens)[:cap]
    out = []
    for k in range(1, len(gens) + 1):
        for sub in combinations(gens, k):
            out.append(tuple(sum(c) for c in zip(*sub)))
    return out


def measure_suite(alg: FiniteEqAlgebra) -> AxiomReport:
    """Measure facts on every cone generator and every sum of generators."""
    require_valid(alg, "measure_suite")
    M, S, B = alg.meet, alg.sim, alg.bsim
    cone = measure_cone(alg)
    gens = list(cone.rays)
    points = gens + _subset_sums(gens)
    els = alg.elements
    labels = ("measure-generators", "measure-unit", "measure-antitone", "measure-vee-symmetric",
              "measure-vee-agree", "measure-distance-agree", "measure-vee-below",
              "measure-kernel-ds", "measure-kernel-normal-if-invariant",
              "measure-kernel-commutative", "morphisms-inside-measures",
              "measure-quotient-commutative", "order-determining-commutative")
    report = AxiomReport(checked=list(labels))
    inv = is_invariant_scan(alg)
    for g in gens:
        if not is_measure(alg, g):
            report.add("measure-generators", g)
    for m in points:
        if m[alg.top] != 0:
            report.add("measure-unit", m)
        for x, y in product(els, repeat=2):
            v1, v1r = vee1(alg, x, y), vee1(alg, y, x)
            v2, v2r = vee2(alg, x, y), vee2(alg, y, x)
            if alg.leq(x, y) and m[x] < m[y]:
                report.add("measure-antitone", (x, y))
            if m[v1] != m[v1r] or m[v2] != m[v2r]:
                report.add("measure-vee-symmetric", (x, y))
            if m[v1] != m[v2r]:
                report.add("measure-vee-agree", (x, y))
            if m[S[M[x][y]][x]] != m[B[x][M[x][y]]]:
                report.add("measure-distance-agree", (x, y))
            if alg.leq(y, x) and not (m[v1] == m[v2] == m[x]):
                report.add("measure-vee-below", (x, y))
        ker = ElementSet.of(alg.n, (i for i, v in enumerate(m) if v == 0))
        if not is_ds(alg, ker):
            report.add("measure-kernel-ds", ker.members())
            continue
        if inv and not is_normal_ds(alg, ker):
            report.add("measure-kernel-normal-if-invariant", ker.members())
        if not is_commutative_ds(alg, ker):
            report.add("measure-kernel-commutative", ker.members())
        if inv and is_normal_ds(alg, ker):
            q = congruence_of(alg, ker)
            if not is_commutative(q.algebra):
                report.add("measure-quotient-commutative", ker.members())
    if alg.n <= 6 and not measure_morphisms(alg).inside_cone(cone):
        report.add("morphisms-inside-measures")
    if is_order_determining(alg, gens or [RationalFn([0] * alg.n)]).holds and not is_commutative(alg):
        report.add("order-determining-commutative")
    return report


def valuation_suite(alg: FiniteEqAlgebra) -> AxiomReport:
    require_valid(alg, "valuation_suite")
    M, S, B = alg.meet, alg.sim, alg.bsim
    labels = ("valuation-nonnegative", "valuation-order-reversing", "valuation-triangle",
              "ds-indicator-valuations", "valuation-kernel-ds", "commutative-valuation-kernel",
              "commutative-valuation-criteria", "commutative-cone-equal")
    report = AxiomReport(checked=list(labels))
    cone = valuation_cone(alg)
    ccone = valuation_cone(alg, commutative=True)
    gens = list(cone.rays)
    points = gens + _subset_sums(gens)
    els = alg.elements
    for f in points:
        if any(v < 0 for v in f):
            report.add("valuation-nonnegative", f)
        for x, y in product(els, repeat=2):
            if alg.leq(x, y) and f[x] < f[y]:
                report.add("valuation-order-reversing", (x, y))
        for x, y, z in product(els, repeat=3):
            xy = M[x][y]
            h1 = S[M[B[y][xy]][z]][z] == alg.top
            h2 = B[z][M[S[xy][y]][z]] == alg.top
            if (h1 or h2) and f[x] > f[y] + f[z]:
                report.add("valuation-triangle", (x, y, z))
        if not is_ds(alg, ElementSet.of(alg.n, (i for i, v in enumerate(f) if v == 0))):
            report.add("valuation-kernel-ds", f)
        try:
            is_commutative_valuation(alg, f)
        except TheoremViolation:
            report.add("commutative-valuation-criteria", f)
    for r in enumerate_ds(alg):
        for a in (1, 2, Fraction(7, 2)):
            if not is_valuation(alg, ds_valuation(alg, r.set, a)):
                report.add("ds-indicator-valuations", r.set.members() + (a,))
    cgens = list(ccone.rays)
    for f in cgens + _subset_sums(cgens):
        if not is_commutative_ds(alg, ElementSet.of(alg.n, (i for i, v in enumerate(f) if v == 0))):
            report.add("commutative-valuation-kernel", f)
    if is_commutative(alg) and not ccone.same_set(cone):
        report.add("commutative-cone-equal")
    return report


def translation_suite(alg: FiniteEqAlgebra) -> AxiomReport:
    """Measure, measure-morphism and pseudo-valuation sets on both sides of psi."""
    require_valid(alg, "translation_suite")
    b = psi(alg)
    back = phi(b)
    inv = is_invariant_scan(alg)
    report = AxiomReport()

    def check(label, ok):
        report.checked.append(label)
        if not ok:
            report.add(label)

    m_eq, m_bck, m_back = measure_cone(alg), bck_measure_cone(b), measure_cone(back)
    check("measures-into-bck", m_eq.subset_of(m_bck))
    check("bck-measures-into-phi", m_bck.subset_of(m_back))
    check("measures-equal-when-invariant", not inv or m_eq.same_set(m_bck))
    if alg.n <= 6:
        mm_eq, mm_bck, mm_back = measure_morphisms(alg), bck_measure_morphisms(b), measure_morphisms(back)
        linear = is_linear(alg)
        check("morphisms-into-bck", mm_eq.subset_of(mm_bck))
        check("bck-morphisms-into-phi-when-linear", not linear or mm_bck.subset_of(mm_back))
        check("morphisms-equal-when-invariant-linear", not (inv and linear) or mm_eq.same_set(mm_bck))
    v_eq, v_bck, v_back = valuation_cone(alg), bck_valuation_cone(b), valuation_cone(back)
    check("valuations-into-bck", v_eq.subset_of(v_bck))
    check("bck-valuations-into-phi", v_bck.subset_of(v_back))
    return report

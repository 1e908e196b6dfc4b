"""Deductive systems, the congruences they induce, and quotient algebras."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Optional

from .core import (AxiomReport, FiniteEqAlgebra, Witness, is_commutative, require_valid,
                   verify_axioms)
from .errors import CongruenceError, PreconditionError, TheoremViolation


@dataclass(frozen=True)
class ElementSet:
    """A subset of ``0..n-1`` stored as a bitmask."""

    n: int
    bits: int = 0

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> "ElementSet":
        bits = 0
        for x in members:
            if not 0 <= x < n:
                raise PreconditionError(f"element {x} outside carrier of size {n}")
            bits |= 1 << x
        return cls(n, bits)

    @classmethod
    def full(cls, n: int) -> "ElementSet":
        return cls(n, (1 << n) - 1)

    def __contains__(self, x: int) -> bool:
        return bool(self.bits >> x & 1)

    def __iter__(self) -> Iterator[int]:
        return (x for x in range(self.n) if self.bits >> x & 1)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __le__(self, other: "ElementSet") -> bool:
        return self.bits & ~other.bits == 0

    def __lt__(self, other: "ElementSet") -> bool:
        return self <= other and self.bits != other.bits

    def __or__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.n, self.bits | other.bits)

    def __and__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.n, self.bits & other.bits)

    def members(self) -> tuple[int, ...]:
        return tuple(self)

    def sort_key(self):
        return (len(self), self.members())

    def render(self, names) -> str:
        return "{" + ",".join(names[x] for x in self) + "}"


@dataclass(frozen=True)
class DsRecord:
    set: ElementSet
    is_ds: bool
    is_closed: bool
    is_normal: bool
    is_commutative: bool
    is_proper: bool
    is_maximal: bool


@dataclass(frozen=True)
class QuotientResult:
    classes: tuple[tuple[int, ...], ...]
    projection: tuple[int, ...]
    algebra: FiniteEqAlgebra


# -- membership tests ----------------------------------------------------------

def _upset_witness(alg, d: ElementSet) -> Optional[Witness]:
    for x in d:
        for y in alg.elements:
            if alg.meet[x][y] == x and y not in d:
                return (x, y)
    return None


def _detach_witness(alg, d: ElementSet, rule: str) -> Optional[Witness]:
    """First (x, y) with x and the rule's premise in d but y outside d."""
    M, S, B = alg.meet, alg.sim, alg.bsim
    for x in d:
        for y in alg.elements:
            if y in d:
                continue
            if rule == "ds3":
                premise = S[y][x]
            elif rule == "ds3'":
                premise = B[x][y]
            elif rule == "ds4":
                premise = S[M[x][y]][x]
            else:  # ds4'
                premise = B[x][M[x][y]]
            if premise in d:
                return (x, y)
    return None


def ds_witness(alg: FiniteEqAlgebra, d: ElementSet) -> Optional[tuple[str, Witness]]:
    if alg.top not in d:
        return ("DS1", ())
    w = _upset_witness(alg, d)
    if w is not None:
        return ("DS2", w)
    w = _detach_witness(alg, d, "ds3")
    if w is not None:
        return ("DS3", w)
    return None


def is_ds(alg: FiniteEqAlgebra, d: ElementSet) -> bool:
    return ds_witness(alg, d) is None


def _check_detachment_variants(alg, d: ElementSet):
    """On an upset containing top, all four detachment rules must agree."""
    verdicts = {rule: _detach_witness(alg, d, rule) is None for rule in ("ds3", "ds3'", "ds4", "ds4'")}
    if len(set(verdicts.values())) != 1:
        raise TheoremViolation(f"detachment rules disagree on {d.members()}: {verdicts}")


def is_closed_ds(alg: FiniteEqAlgebra, d: ElementSet) -> bool:
    closed = all(alg.sim[x][y] in d and alg.bsim[x][y] in d for x in d for y in d)
    short = all(alg.sim[alg.top][x] in d and alg.bsim[x][alg.top] in d for x in d)
    if closed != short:
        raise TheoremViolation(f"closedness criteria disagree on {d.members()}")
    return closed


def normal_witness(alg: FiniteEqAlgebra, d: ElementSet) -> Optional[Witness]:
    S, B = alg.sim, alg.bsim
    for x, y in product(alg.elements, repeat=2):
        left = S[x][y] in d and S[y][x] in d
        right = B[y][x] in d and B[x][y] in d
        if left != right:
            return (x, y)
    return None


def is_normal_ds(alg: FiniteEqAlgebra, d: ElementSet) -> bool:
    return normal_witness(alg, d) is None


def _cds_def_witness(alg, d: ElementSet) -> Optional[Witness]:
    M, S, B = alg.meet, alg.sim, alg.bsim
    for x, y in product(alg.elements, repeat=2):
        xy = M[x][y]
        if S[xy][y] in d and S[x][B[S[xy][x]][y]] not in d:
            return (x, y)
        if B[y][xy] in d and B[S[y][B[x][xy]]][x] not in d:
            return (x, y)
    return None


def _cds_upset_characterization(alg, d: ElementSet) -> bool:
    """Three-condition description quantified over an extra z."""
    M, S, B, t = alg.meet, alg.sim, alg.bsim, alg.top
    if t not in d:
        return False
    for x, y in product(alg.elements, repeat=2):
        xy = M[x][y]
        c1 = S[x][B[S[xy][x]][y]] in d
        c2 = B[S[y][B[x][xy]]][x] in d
        for z in d:
            if not c1 and S[M[S[xy][y]][z]][z] in d:
                return False
            if not c2 and B[z][M[B[y][xy]][z]] in d:
                return False
    return True


def is_commutative_ds(alg: FiniteEqAlgebra, d: ElementSet) -> bool:
    w = ds_witness(alg, d)
    if w is not None:
        raise PreconditionError(f"not a deductive system: {w[0]} fails", w[1])
    by_def = _cds_def_witness(alg, d) is None
    if by_def != _cds_upset_characterization(alg, d):
        raise TheoremViolation(f"commutative-DS criteria disagree on {d.members()}")
    return by_def


# -- enumeration -------------------------------------------------------------------

def upsets(alg: FiniteEqAlgebra) -> list[ElementSet]:
    """All up-sets containing top."""
    n, M = alg.n, alg.meet
    above = [[y for y in alg.elements if y != x and M[x][y] == x] for x in alg.elements]
    # decreasing order: every element is visited after all elements above it
    order = sorted(alg.elements, key=lambda x: -len([y for y in alg.elements if M[y][x] == y]))
    out = []

    def rec(i, bits):
        if i == n:
            out.append(ElementSet(n, bits))
            return
        x = order[i]
        if x != alg.top:
            rec(i + 1, bits)
        if all(bits >> y & 1 for y in above[x]):
            rec(i + 1, bits | 1 << x)

    rec(0, 0)
    return [s for s in out if alg.top in s]


def _sorted_sets(sets):
    return sorted(sets, key=ElementSet.sort_key)


def enumerate_ds(alg: FiniteEqAlgebra) -> list[DsRecord]:
    require_valid(alg, "enumerate_ds")
    systems = []
    for u in upsets(alg):
        _check_detachment_variants(alg, u)
        if _detach_witness(alg, u, "ds3") is None:
            systems.append(u)
    systems = _sorted_sets(systems)
    full = ElementSet.full(alg.n)
    proper = [s for s in systems if s != full]
    comm = is_commutative(alg)
    records = []
    for s in systems:
        maximal = s != full and not any(s < p for p in proper)
        records.append(DsRecord(
            set=s,
            is_ds=True,
            is_closed=is_closed_ds(alg, s),
            is_normal=is_normal_ds(alg, s),
            is_commutative=is_commutative_ds(alg, s),
            is_proper=s != full,
            is_maximal=maximal,
        ))
    if comm and not all(r.is_commutative for r in records):
        raise TheoremViolation("a commutative algebra has a non-commutative deductive system")
    return records


def enumerate_ds_bruteforce(alg: FiniteEqAlgebra) -> list[ElementSet]:
    """Every subset checked directly; the oracle for :func:`enumerate_ds`."""
    if alg.n > 12:
        raise PreconditionError("subset brute force is limited to 12 elements")
    return _sorted_sets(ElementSet(alg.n, bits) for bits in range(1 << alg.n)
                        if is_ds(alg, ElementSet(alg.n, bits)))


def generate_ds(alg: FiniteEqAlgebra, seed: ElementSet) -> ElementSet:
    """Least deductive system containing ``seed``, by closure to a fixpoint."""
    M, S = alg.meet, alg.sim
    bits = seed.bits | 1 << alg.top
    changed = True
    while changed:
        changed = False
        cur = ElementSet(alg.n, bits)
        for x in cur:
            for y in alg.elements:
                if not bits >> y & 1 and (M[x][y] == x or S[y][x] in cur):
                    bits |= 1 << y
                    changed = True
    return ElementSet(alg.n, bits)


def is_simple(alg: FiniteEqAlgebra) -> bool:
    return len(enumerate_ds(alg)) == 2


# -- congruences and quotients ----------------------------------------------------

def theta(alg: FiniteEqAlgebra, h: ElementSet) -> set[tuple[int, int]]:
    S = alg.sim
    return {(x, y) for x, y in product(alg.elements, repeat=2) if S[x][y] in h and S[y][x] in h}


def _congruence_witness(alg, rel) -> Optional[tuple[str, Witness]]:
    els = alg.elements
    for x in els:
        if (x, x) not in rel:
            return ("reflexive", (x,))
    for x, y in rel:
        if (y, x) not in rel:
            return ("symmetric", (x, y))
    for (x, y), (y2, z) in product(sorted(rel), repeat=2):
        if y == y2 and (x, z) not in rel:
            return ("transitive", (x, y, z))
    for (x1, y1), (x2, y2) in product(sorted(rel), repeat=2):
        for label, t in (("CG1", alg.meet), ("CG2", alg.sim), ("CG3", alg.bsim)):
            if (t[x1][x2], t[y1][y2]) not in rel:
                return (label, (x1, y1, x2, y2))
    return None


def is_congruence(alg: FiniteEqAlgebra, rel) -> bool:
    return _congruence_witness(alg, set(rel)) is None


def quotient_by_relation(alg: FiniteEqAlgebra, rel) -> QuotientResult:
    rel = set(rel)
    w = _congruence_witness(alg, rel)
    if w is not None:
        raise CongruenceError(f"relation is not a congruence ({w[0]})", w[1])
    proj = [-1] * alg.n
    classes = []
    for x in alg.elements:
        if proj[x] < 0:
            members = tuple(y for y in alg.elements if (x, y) in rel)
            for y in members:
                proj[y] = len(classes)
            classes.append(members)
    k = len(classes)

    def table(t):
        rows = [[-1] * k for _ in range(k)]
        for x, y in product(alg.elements, repeat=2):
            v = proj[t[x][y]]
            cur = rows[proj[x]][proj[y]]
            if cur >= 0 and cur != v:
                raise CongruenceError("quotient operation is not well defined", (x, y))
            rows[proj[x]][proj[y]] = v
        return rows

    names = tuple("[" + ",".join(alg.names[x] for x in c) + "]" for c in classes)
    q = FiniteEqAlgebra(meet=table(alg.meet), sim=table(alg.sim), bsim=table(alg.bsim),
                        top=proj[alg.top], names=names)
    report = verify_axioms(q)
    if not report.passed:
        raise CongruenceError(f"quotient fails {report.violations[0][0]}", report.violations[0][1])
    return QuotientResult(classes=tuple(classes), projection=tuple(proj), algebra=q)


def congruence_of(alg: FiniteEqAlgebra, h: ElementSet) -> QuotientResult:
    """Quotient by the congruence of a normal deductive system ``h``.

    Well-definedness is always re-verified; the bijection with congruences is
    only guaranteed for invariant algebras.
    """
    w = ds_witness(alg, h)
    if w is not None:
        raise PreconditionError(f"not a deductive system: {w[0]} fails", w[1])
    nw = normal_witness(alg, h)
    if nw is not None:
        raise PreconditionError("deductive system is not normal", nw)
    return quotient_by_relation(alg, theta(alg, h))


def top_class(alg: FiniteEqAlgebra, rel) -> ElementSet:
    return ElementSet.of(alg.n, (x for x in alg.elements if (x, alg.top) in rel))


def congruence_lattice_report(alg: FiniteEqAlgebra) -> AxiomReport:
    """Normal deductive systems versus congruences.

    * the top class of every congruence is a closed normal deductive system
    * for a closed normal h the top class of its congruence is h again
    * on invariant algebras h -> theta(h) is a bijection onto congruences
    """
    from .core import is_invariant_scan

    report = AxiomReport(checked=["top-class-closed-normal", "closed-normal-round-trip",
                                  "invariant-bijection"])
    records = enumerate_ds(alg)
    normal = [r.set for r in records if r.is_normal]
    congruences = all_congruences(alg)
    for rel in congruences:
        f = top_class(alg, rel)
        if not (is_ds(alg, f) and is_normal_ds(alg, f) and is_closed_ds(alg, f)):
            report.add("top-class-closed-normal", f.members())
    for r in records:
        if r.is_normal and r.is_closed and top_class(alg, theta(alg, r.set)) != r.set:
            report.add("closed-normal-round-trip", r.set.members())
    if is_invariant_scan(alg):
        images = {frozenset(theta(alg, h)) for h in normal}
        if len(images) != len(normal) or images != {frozenset(c) for c in congruences}:
            report.add("invariant-bijection")
    return report


def all_congruences(alg: FiniteEqAlgebra) -> list[set]:
    """Every congruence, by enumerating set partitions (small carriers only)."""
    n = alg.n
    if n > 8:
        raise PreconditionError("partition enumeration is limited to 8 elements")
    out = []

    def partitions(i, blocks):
        if i == n:
            yield [list(b) for b in blocks]
            return
        for b in blocks:
            b.append(i)
            yield from partitions(i + 1, blocks)
            b.pop()
        blocks.append([i])
        yield from partitions(i + 1, blocks)
        blocks.pop()

    for part in partitions(0, []):
        rel = {(x, y) for b in part for x in b for y in b}
        if _congruence_witness(alg, rel) is None:
            out.append(rel)
    return out


# -- theorem checks -------------------------------------------------------------------

def check_quotient_commutativity_theorem(alg: FiniteEqAlgebra) -> AxiomReport:
    """For each normal h: h is commutative exactly when A/h is commutative."""
    require_valid(alg)
    report = AxiomReport(checked=["quotient-commutativity"])
    for r in enumerate_ds(alg):
        if not r.is_normal:
            continue
        try:
            q = congruence_of(alg, r.set)
        except CongruenceError as exc:
            report.add("quotient-congruence-failure", r.set.members() + (exc.witness or ()))
            continue
        if r.is_commutative != is_commutative(q.algebra):
            report.add("quotient-commutativity", r.set.members())
    return report


def commutativity_via_systems(alg: FiniteEqAlgebra) -> AxiomReport:
    """Commutative algebra iff {top} is a commutative system iff every system is."""
    records = enumerate_ds(alg)
    comm = is_commutative(alg)
    singleton = is_commutative_ds(alg, ElementSet.of(alg.n, [alg.top]))
    every = all(r.is_commutative for r in records)
    report = AxiomReport(checked=["commutative-iff-top-system", "commutative-iff-all-systems"])
    if comm != singleton:
        report.add("commutative-iff-top-system")
    if comm != every:
        report.add("commutative-iff-all-systems")
    return report


def ds_consequences_suite(alg: FiniteEqAlgebra) -> AxiomReport:
    """Membership consequences for commutative systems, and the identities
    they collapse to when the whole algebra is commutative."""
    require_valid(alg)
    M, S, B, t = alg.meet, alg.sim, alg.bsim, alg.top
    els = alg.elements
    report = AxiomReport(checked=["cds-below-members", "cds-derived-members",
                                  "comm-below-unit", "comm-below-identity",
                                  "comm-unit-equality-identity"])

    def first(pred):
        for x, y in product(els, repeat=2):
            if not pred(x, y):
                return (x, y)
        return None

    for r in enumerate_ds(alg):
        if not r.is_commutative:
            continue
        d = r.set

        def below(x, y, d=d):
            if M[y][x] != y:
                return True
            return S[x][B[S[y][x]][y]] in d and B[S[y][B[x][y]]][x] in d

        def derived(x, y, d=d):
            u = B[S[x][y]][x]
            v = S[x][B[y][x]]
            return S[u][B[S[y][u]][y]] in d and B[S[y][B[v][y]]][v] in d

        for label, pred in (("cds-below-members", below), ("cds-derived-members", derived)):
            w = first(pred)
            if w is not None:
                report.add(label, d.members() + w)

    if is_commutative(alg):
        def unit(x, y):
            return M[y][x] != y or (S[x][B[S[y][x]][y]] == t and B[S[y][B[x][y]]][x] == t)

        def ident(x, y):
            return M[y][x] != y or (x == B[S[y][x]][y] == S[y][B[x][y]])

        def unit_eq(x, y):
            return not (S[x][y] == t or B[y][x] == t) or (x == B[S[y][x]][y] == S[y][B[x][y]])

        for label, pred in (("comm-below-unit", unit), ("comm-below-identity", ident),
                            ("comm-unit-equality-identity", unit_eq)):
            w = first(pred)
            if w is not None:
                report.add(label, w)
    return report

"""Pseudo BCK-meet-semilattices and the two translations.

``psi`` turns an equality algebra into a BCK structure through its derived
implications; ``phi`` goes back by reading ``x ~ y = y -> x`` and
``x ~' y = x ~> y``.  Round trips are compared table-for-table, with no
isomorphism slack.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

from .core import (AxiomReport, Check, FiniteEqAlgebra, Table, Witness, _as_table, _first,
                   invariant_witness, is_commutative, require_valid, verify_axioms)
from .errors import PreconditionError, StructureError, TheoremViolation


@dataclass(frozen=True)
class FiniteBckAlgebra:
    meet: Table
    arrow: Table
    squig: Table
    top: int
    names: tuple[str, ...] = None  # type: ignore[assignment]

    def __post_init__(self):
        n = len(self.meet)
        if n < 1:
            raise StructureError("a structure needs at least one element")
        for label in ("meet", "arrow", "squig"):
            object.__setattr__(self, label, _as_table(getattr(self, label), n, label))
        if not isinstance(self.top, int) or not 0 <= self.top < n:
            raise StructureError(f"top = {self.top!r} is not an element index")
        names = tuple(str(i) for i in range(n)) if self.names is None else tuple(self.names)
        if len(names) != n or len(set(names)) != n:
            raise StructureError("need one unique name per element")
        object.__setattr__(self, "names", names)

    @property
    def n(self) -> int:
        return len(self.meet)

    @property
    def elements(self) -> range:
        return range(self.n)

    def leq(self, x: int, y: int) -> bool:
        return self.arrow[x][y] == self.top

    def with_tables(self, **changes) -> "FiniteBckAlgebra":
        f = dict(meet=self.meet, arrow=self.arrow, squig=self.squig, top=self.top, names=self.names)
        f.update(changes)
        return FiniteBckAlgebra(**f)

    def same_tables(self, other: "FiniteBckAlgebra") -> bool:
        return (self.top == other.top and self.meet == other.meet
                and self.arrow == other.arrow and self.squig == other.squig)


def verify_bck(b: FiniteBckAlgebra) -> AxiomReport:
    """B1'..B6', the meet-semilattice laws, and agreement of the two orders."""
    if not isinstance(b, FiniteBckAlgebra):
        raise StructureError("verify_bck expects a FiniteBckAlgebra")
    n, t = b.n, b.top
    M, AR, SQ = b.meet, b.arrow, b.squig

    checks = (
        ("B1", 3, lambda x, y, z: SQ[AR[x][y]][SQ[AR[y][z]][AR[x][z]]] == t),
        ("B2", 3, lambda x, y, z: AR[SQ[x][y]][AR[SQ[y][z]][SQ[x][z]]] == t),
        ("B3", 1, lambda x: AR[t][x] == x),
        ("B4", 1, lambda x: SQ[t][x] == x),
        ("B5", 1, lambda x: AR[x][t] == t),
        ("B6", 2, lambda x, y: not (AR[x][y] == t and AR[y][x] == t) or x == y),
        ("squig-order", 2, lambda x, y: (AR[x][y] == t) == (SQ[x][y] == t)),
        ("meet-semilattice", 3, lambda x, y, z: (
            M[x][x] == x and M[x][y] == M[y][x] and M[M[x][y]][z] == M[x][M[y][z]]
            and M[x][t] == x)),
        ("meet-order", 2, lambda x, y: (M[x][y] == x) == (AR[x][y] == t)),
    )
    report = AxiomReport()
    for label, arity, pred in checks:
        report.checked.append(label)
        w = _first(pred, n, arity)
        if w is not None:
            report.add(label, w)
    return report


def bck_identity_suite(b: FiniteBckAlgebra) -> AxiomReport:
    """Standard consequences of the BCK axioms, evaluated exhaustively."""
    _require_bck(b)
    AR, SQ = b.arrow, b.squig
    le = b.leq

    def implies(p, q):
        return (not p) or q

    clauses = (
        ("bck-right-monotone", 3, lambda x, y, z: implies(le(x, y), le(AR[z][x], AR[z][y]) and le(SQ[z][x], SQ[z][y]))),
        ("bck-left-antitone", 3, lambda x, y, z: implies(le(x, y), le(AR[y][z], AR[x][z]) and le(SQ[y][z], SQ[x][z]))),
        ("bck-prefixing", 3, lambda x, y, z: (
            le(AR[x][y], AR[AR[z][x]][AR[z][y]]) and le(SQ[x][y], SQ[SQ[z][x]][SQ[z][y]]))),
        ("bck-exchange", 3, lambda x, y, z: AR[x][SQ[y][z]] == SQ[y][AR[x][z]] and SQ[x][AR[y][z]] == AR[y][SQ[x][z]]),
        ("bck-weakening", 2, lambda x, y: le(x, AR[y][x]) and le(x, SQ[y][x])),
    )
    report = AxiomReport()
    for label, arity, pred in clauses:
        report.checked.append(label)
        w = _first(pred, b.n, arity)
        if w is not None:
            report.add(label, w)
    return report


def _require_bck(b: FiniteBckAlgebra):
    report = verify_bck(b)
    if not report.passed:
        label, w = report.violations[0]
        raise PreconditionError(f"not a pseudo BCK-meet-semilattice: {label} fails", w)


def pC_witness(b: FiniteBckAlgebra) -> Optional[Witness]:
    M, AR, SQ = b.meet, b.arrow, b.squig
    for x, y, z in product(b.elements, repeat=3):
        xz, yz = M[x][z], M[y][z]
        if not (b.meet[AR[x][y]][AR[xz][yz]] == AR[x][y] and M[SQ[x][y]][SQ[xz][yz]] == SQ[x][y]):
            return (x, y, z)
    return None


def pD_witness(b: FiniteBckAlgebra) -> Optional[Witness]:
    M, AR, SQ = b.meet, b.arrow, b.squig
    for x, y, z in product(b.elements, repeat=3):
        if AR[x][M[y][z]] != M[AR[x][y]][AR[x][z]] or SQ[x][M[y][z]] != M[SQ[x][y]][SQ[x][z]]:
            return (x, y, z)
    return None


def check_pC(b: FiniteBckAlgebra) -> bool:
    """x -> y <= (x meet z) -> (y meet z), and the same for ~>."""
    _require_bck(b)
    return pC_witness(b) is None


def check_pD(b: FiniteBckAlgebra) -> bool:
    """Both implications distribute over meet in their second argument."""
    _require_bck(b)
    return pD_witness(b) is None


def bck_commutative_witness(b: FiniteBckAlgebra) -> Optional[Witness]:
    AR, SQ = b.arrow, b.squig
    for x, y in product(b.elements, repeat=2):
        if SQ[AR[x][y]][y] != SQ[AR[y][x]][x] or AR[SQ[x][y]][y] != AR[SQ[y][x]][x]:
            return (x, y)
    return None


def check_bck_commutative(b: FiniteBckAlgebra) -> bool:
    _require_bck(b)
    return bck_commutative_witness(b) is None


def psi(alg: FiniteEqAlgebra) -> FiniteBckAlgebra:
    """Replace the equalities by the derived implications."""
    require_valid(alg, "psi")
    b = FiniteBckAlgebra(meet=alg.meet, arrow=alg.arrow_table, squig=alg.squig_table,
                         top=alg.top, names=alg.names)
    report = verify_bck(b)
    if not report.passed:
        raise TheoremViolation("image is not a pseudo BCK-meet-semilattice", report.violations[0])
    w = pC_witness(b)
    if w is not None:
        raise TheoremViolation("image fails the (pC) condition", w)
    return b


def phi(b: FiniteBckAlgebra) -> FiniteEqAlgebra:
    """Read equalities off the implications: x ~ y = y -> x, x ~' y = x ~> y."""
    _require_bck(b)
    w = pC_witness(b)
    if w is not None:
        raise PreconditionError("phi needs the (pC) condition", w)
    n = b.n
    sim = tuple(tuple(b.arrow[y][x] for y in range(n)) for x in range(n))
    alg = FiniteEqAlgebra(meet=b.meet, sim=sim, bsim=b.squig, top=b.top, names=b.names)
    report = verify_axioms(alg)
    if not report.passed:
        raise TheoremViolation("phi produced a non-algebra", report.violations[0])
    back = FiniteBckAlgebra(meet=alg.meet, arrow=alg.arrow_table, squig=alg.squig_table,
                            top=alg.top, names=alg.names)
    if not back.same_tables(b):
        raise TheoremViolation("psi(phi(b)) differs from b")
    return alg


def check_invariant(alg: FiniteEqAlgebra) -> Check:
    """Invariance by the two-identity scan, cross-checked against phi(psi(alg)) == alg."""
    require_valid(alg, "check_invariant")
    w = invariant_witness(alg)
    round_trip = phi(psi(alg)).same_tables(alg)
    if round_trip != (w is None):
        raise TheoremViolation("invariance scan and round trip disagree", w)
    return Check(w is None, w)


def round_trip_report(alg: FiniteEqAlgebra) -> AxiomReport:
    """Translation identities on one algebra.

    * psi(phi(psi(A))) == psi(A)
    * phi(psi(A)) == A exactly when the invariance scan passes
    * for invariant A, commutativity of A matches commutativity of psi(A)
    * commutative A has a commutative image and back
    * symmetric A has equal implication tables
    """
    report = AxiomReport()
    b = psi(alg)
    back = phi(b)
    report.checked.append("psi-phi-psi")
    if not psi(back).same_tables(b):
        report.add("psi-phi-psi")
    report.checked.append("invariance-round-trip")
    inv_scan = invariant_witness(alg) is None
    if back.same_tables(alg) != inv_scan:
        report.add("invariance-round-trip")
    comm = is_commutative(alg)
    bcomm = bck_commutative_witness(b) is None
    report.checked.append("invariant-commutativity-transfer")
    if inv_scan and comm != bcomm:
        report.add("invariant-commutativity-transfer")
    report.checked.append("commutative-image")
    if comm and not bcomm:
        report.add("commutative-image")
    report.checked.append("commutative-preimage")
    if bcomm and not is_commutative(back):
        report.add("commutative-preimage")
    report.checked.append("symmetric-equal-implications")
    if all(alg.bsim[x][y] == alg.sim[y][x] for x in alg.elements for y in alg.elements):
        if b.arrow != b.squig:
            report.add("symmetric-equal-implications")
    report.checked.append("pD-implies-pC")
    if pD_witness(b) is None and pC_witness(b) is not None:
        report.add("pD-implies-pC")
    return report


def bck_trivial() -> FiniteBckAlgebra:
    return FiniteBckAlgebra(meet=((0,),), arrow=((0,),), squig=((0,),), top=0, names=("1",))

"""Internal states of type I and II and state-morphism operators."""
from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product
from typing import NamedTuple, Optional, Sequence

from .core import (AxiomReport, Check, FiniteEqAlgebra, is_commutative, is_invariant_scan,
                   is_linear, is_symmetric, require_valid)
from .dedsys import ElementSet, is_ds
from .errors import BudgetExceeded, PreconditionError

DEFAULT_STATE_BUDGET = 10_000_000


def state_budget() -> int:
    raw = os.environ.get("EQALG_BUDGET")
    return int(raw) if raw else DEFAULT_STATE_BUDGET


class StateCheck(NamedTuple):
    type_one: Check
    type_two: Check
    morphism: Check


@dataclass(frozen=True)
class StateOperator:
    map: tuple[int, ...]
    type_one: bool
    type_two: bool
    morphism: bool
    faithful: bool

    @property
    def n(self) -> int:
        return len(self.map)

    def render(self, names: Sequence[str]) -> str:
        return " ".join(names[v] for v in self.map)


def _as_map(alg: FiniteEqAlgebra, s) -> tuple[int, ...]:
    s = tuple(s)
    if len(s) != alg.n or not all(isinstance(v, int) and 0 <= v < alg.n for v in s):
        raise PreconditionError(f"a state map needs {alg.n} element indices, got {s!r}")
    return s


def _first_pair(alg, pred) -> Optional[tuple[int, int]]:
    for x, y in product(alg.elements, repeat=2):
        if not pred(x, y):
            return (x, y)
    return None


def _scan(alg, s, axioms) -> Check:
    for label, pred in axioms:
        w = _first_pair(alg, pred)
        if w is not None:
            return Check(False, (label, w))
    return Check(True, None)


def _axioms(alg: FiniteEqAlgebra, s: tuple[int, ...]):
    M, S, B = alg.meet, alg.sim, alg.bsim

    def is1(x, y):
        return not alg.leq(x, y) or alg.leq(s[x], s[y])

    def is2(x, y):
        xy = M[x][y]
        return (s[S[xy][x]] == S[s[y]][s[B[S[xy][x]][y]]]
                and s[B[x][xy]] == B[s[S[y][B[x][xy]]]][s[y]])

    def is2p(x, y):
        xy = M[x][y]
        return (s[S[xy][x]] == S[s[y]][s[B[S[xy][y]][x]]]
                and s[B[x][xy]] == B[s[S[x][B[y][xy]]]][s[y]])

    def is3(x, y):
        return s[S[s[x]][s[y]]] == S[s[x]][s[y]] and s[B[s[x]][s[y]]] == B[s[x]][s[y]]

    def is4(x, y):
        return s[M[s[x]][s[y]]] == M[s[x]][s[y]]

    def sm(table):
        return lambda x, y: s[table[x][y]] == table[s[x]][s[y]]

    def sm4(x, y):
        return s[s[x]] == s[x]

    one = (("IS1", is1), ("IS2", is2), ("IS3", is3), ("IS4", is4))
    two = (("IS1", is1), ("IS2'", is2p), ("IS3", is3), ("IS4", is4))
    morph = (("SM1", sm(S)), ("SM2", sm(B)), ("SM3", sm(M)), ("SM4", sm4))
    return one, two, morph


def check_state(alg: FiniteEqAlgebra, s) -> StateCheck:
    """Scan the three axiom families; each verdict carries (axiom, (x, y)) on failure."""
    s = _as_map(alg, s)
    one, two, morph = _axioms(alg, s)
    return StateCheck(_scan(alg, s, one), _scan(alg, s, two), _scan(alg, s, morph))


def kernel(alg: FiniteEqAlgebra, s) -> ElementSet:
    return ElementSet.of(alg.n, (x for x in alg.elements if s[x] == alg.top))


def _operator(alg, s, verdict: StateCheck) -> StateOperator:
    return StateOperator(
        map=s,
        type_one=verdict.type_one.holds,
        type_two=verdict.type_two.holds,
        morphism=verdict.morphism.holds,
        faithful=len(kernel(alg, s)) == 1,
    )


def enumerate_states(alg: FiniteEqAlgebra, budget: Optional[int] = None) -> list[StateOperator]:
    """Every map that is a type I state, a type II state or a state-morphism.

    Construction fixes s(top) = top and keeps the partial map idempotent and
    monotone; all three families force those properties.  Raises
    BudgetExceeded once more than ``budget`` partial maps were visited.
    """
    require_valid(alg, "enumerate_states")
    budget = state_budget() if budget is None else budget
    n, t = alg.n, alg.top
    order = [t] + [x for x in alg.elements if x != t]
    s = [-1] * n
    visited = 0
    found = []

    def monotone_with(x, v) -> bool:
        for u in range(n):
            if s[u] < 0:
                continue
            if alg.leq(u, x) and not alg.leq(s[u], v):
                return False
            if alg.leq(x, u) and not alg.leq(v, s[u]):
                return False
        return True

    def rec(i):
        nonlocal visited
        visited += 1
        if visited > budget:
            raise BudgetExceeded(f"state search visited more than {budget} partial maps")
        if i == n:
            m = tuple(s)
            verdict = check_state(alg, m)
            if verdict.type_one.holds or verdict.type_two.holds or verdict.morphism.holds:
                found.append(_operator(alg, m, verdict))
            return
        x = order[i]
        if s[x] >= 0:  # already pinned as a fixed point
            rec(i + 1)
            return
        for v in ([t] if x == t else alg.elements):
            if v == x:
                if not monotone_with(x, x):
                    continue
                s[x] = x
                rec(i + 1)
                s[x] = -1
                continue
            # idempotence: v must be a fixed point
            if s[v] >= 0 and s[v] != v:
                continue
            if not monotone_with(x, v):
                continue
            s[x] = v
            pin = s[v] < 0
            if pin:
                if not monotone_with(v, v):
                    s[x] = -1
                    continue
                s[v] = v
            rec(i + 1)
            if pin:
                s[v] = -1
            s[x] = -1

    rec(0)
    found.sort(key=lambda op: op.map)
    return found


def enumerate_states_bruteforce(alg: FiniteEqAlgebra) -> list[StateOperator]:
    """All n^n maps checked directly; the oracle for :func:`enumerate_states`."""
    if alg.n > 5:
        raise PreconditionError("brute-force state enumeration is limited to 5 elements")
    found = []
    for m in product(alg.elements, repeat=alg.n):
        verdict = check_state(alg, m)
        if verdict.type_one.holds or verdict.type_two.holds or verdict.morphism.holds:
            found.append(_operator(alg, m, verdict))
    return found


def _is_subalgebra(alg, members: set[int]) -> bool:
    if alg.top not in members:
        return False
    return all(t[x][y] in members for t in (alg.meet, alg.sim, alg.bsim)
               for x in members for y in members)


def state_properties_suite(alg: FiniteEqAlgebra, states: Optional[list[StateOperator]] = None) -> AxiomReport:
    require_valid(alg, "state_properties_suite")
    states = enumerate_states(alg) if states is None else states
    labels = ("state-fixes-top", "state-idempotent", "state-image-fixed-points",
              "state-image-subalgebra", "state-kernel-image-meet", "state-kernel-ds",
              "state-kernel-subalgebra-if-invariant", "faithful-strictly-monotone",
              "faithful-linear-identity", "state-types-agree-iff-commutative",
              "identity-type-one", "constant-top-both-types", "linear-symmetric-sets-coincide")
    report = AxiomReport(checked=list(labels))
    els = alg.elements
    comm, inv, lin = is_commutative(alg), is_invariant_scan(alg), is_linear(alg)
    for op in states:
        if not (op.type_one or op.type_two):
            continue
        s = op.map
        if s[alg.top] != alg.top:
            report.add("state-fixes-top", s)
        if any(s[s[x]] != s[x] for x in els):
            report.add("state-idempotent", s)
        image = set(s)
        if image != {x for x in els if s[x] == x}:
            report.add("state-image-fixed-points", s)
        if not _is_subalgebra(alg, image):
            report.add("state-image-subalgebra", s)
        ker = kernel(alg, s)
        if set(ker) & image != {alg.top}:
            report.add("state-kernel-image-meet", s)
        if not is_ds(alg, ker):
            report.add("state-kernel-ds", s)
        if inv and not _is_subalgebra(alg, set(ker)):
            report.add("state-kernel-subalgebra-if-invariant", s)
        if op.faithful and comm:
            for x, y in product(els, repeat=2):
                if x != y and alg.leq(x, y) and not (alg.leq(s[x], s[y]) and s[x] != s[y]):
                    report.add("faithful-strictly-monotone", s + (x, y))
                    break
            if lin and s != tuple(els):
                report.add("faithful-linear-identity", s)
    one = {op.map for op in states if op.type_one}
    two = {op.map for op in states if op.type_two}
    morph = {op.map for op in states if op.morphism}
    if (one == two) != comm:
        report.add("state-types-agree-iff-commutative")
    if tuple(els) not in one:
        report.add("identity-type-one")
    const = tuple([alg.top] * alg.n)
    if const not in one or const not in two:
        report.add("constant-top-both-types")
    if comm and is_symmetric(alg) and lin and not (one == two == morph):
        report.add("linear-symmetric-sets-coincide")
    return report


def morphisms_inside_states(alg: FiniteEqAlgebra, states: Optional[list[StateOperator]] = None) -> Check:
    """Whether every state-morphism is a type I state (checked, not assumed)."""
    states = enumerate_states(alg) if states is None else states
    for op in states:
        if op.morphism and not op.type_one:
            return Check(False, op.map)
    return Check(True, None)

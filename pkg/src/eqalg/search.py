"""Isomorph-free enumeration of finite pseudo equality algebras.

Generation runs in three stages:

1. meet-semilattices with top, up to isomorphism (a finite one is a
   lattice), each relabelled so that indices extend the order and the top
   is the last index;
2. for each such skeleton, backtracking over the ``sim`` and ``bsim``
   tables with A2/A3 cells pre-filled and every A4..A7 instance checked as
   soon as the cells it reads are known (watched-literal style);
3. canonical-form rejection: a solution is kept only if no automorphism of
   the skeleton maps it to a lexicographically smaller pair of tables.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Callable, Iterator, Optional

from .core import FiniteEqAlgebra, classify, is_valid
from .errors import BudgetExceeded, PreconditionError

DEFAULT_SIZE_CAP = 5
DEFAULT_NODE_BUDGET = 50_000_000


def node_budget() -> int:
    raw = os.environ.get("EQALG_BUDGET")
    return int(raw) if raw else DEFAULT_NODE_BUDGET


# -- stage 1: skeletons ---------------------------------------------------------

def _meet_table(leq: list[list[bool]]) -> Optional[list[list[int]]]:
    n = len(leq)
    meet = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            lbs = [z for z in range(n) if leq[z][x] and leq[z][y]]
            glb = [z for z in lbs if all(leq[w][z] for w in lbs)]
            if len(glb) != 1:
                return None
            meet[x][y] = meet[y][x] = glb[0]
    return meet


def _relabel_meet(meet, perm) -> tuple:
    """Meet table after renaming element i to perm[i]."""
    n = len(meet)
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(tuple(perm[meet[inv[a]][inv[b]]] for b in range(n)) for a in range(n))


def _is_linear_extension(perm, leq) -> bool:
    n = len(leq)
    return all(perm[a] <= perm[b] for a in range(n) for b in range(n) if leq[a][b])


def semilattices(n: int) -> list[tuple]:
    """All meet-semilattices with top on ``n`` elements, up to isomorphism.

    Each is returned as a meet table whose labelling is a linear extension
    of the order (so the top is ``n - 1``), chosen to be the
    lexicographically smallest such labelling; the list is sorted.
    """
    if n < 1:
        return []
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    found = set()
    for mask in range(1 << len(pairs)):
        leq = [[i == j for j in range(n)] for i in range(n)]
        for k, (i, j) in enumerate(pairs):
            if mask >> k & 1:
                leq[i][j] = True
        if not all(leq[i][n - 1] for i in range(n)):
            continue
        if any(leq[i][j] and leq[j][k] and not leq[i][k]
               for i in range(n) for j in range(n) for k in range(n)):
            continue
        meet = _meet_table(leq)
        if meet is None:
            continue
        best = min(_relabel_meet(meet, p) for p in permutations(range(n))
                   if _is_linear_extension(p, leq))
        found.add(best)
    return sorted(found)


def automorphisms(meet) -> list[tuple[int, ...]]:
    n = len(meet)
    meet = tuple(tuple(r) for r in meet)
    return [p for p in permutations(range(n)) if _relabel_meet(meet, p) == meet]


# -- stage 2: table search -------------------------------------------------------

# A term is an int constant or a tuple (table, a, b) with table 0 = sim, 1 = bsim.

def _cell(n, table, a, b):
    return table * n * n + a * n + b


def _axiom_instances(meet, top):
    """Yield (lhs, rhs) term pairs meaning lhs <= rhs, for A4..A7."""
    n = len(meet)
    S, B = 0, 1

    def le(a, b):
        return meet[a][b] == a

    for x, y, z in product(range(n), repeat=3):
        if le(x, y) and le(y, z):
            yield (S, x, z), (S, y, z)
            yield (S, x, z), (S, x, y)
            yield (B, z, x), (B, z, y)
            yield (B, z, x), (B, y, x)
        yield (S, x, y), (S, meet[x][z], meet[y][z])
        yield (B, x, y), (B, meet[x][z], meet[y][z])
        yield (S, x, y), (B, (S, z, x), (S, z, y))
        yield (B, x, y), (S, (B, x, z), (B, y, z))
        yield (S, x, y), (S, (S, x, z), (S, y, z))
        yield (B, x, y), (B, (B, z, x), (B, z, y))


def _compile(term, n):
    """Turn a term into a function vals -> value, or -(cell + 1) if unknown."""
    if isinstance(term, int):
        return lambda vals, c=term: c
    table, a, b = term
    off = table * n * n
    if isinstance(a, int) and isinstance(b, int):
        cell = off + a * n + b

        def leaf(vals, cell=cell):
            v = vals[cell]
            return v if v >= 0 else -(cell + 1)
        return leaf
    fa, fb = _compile(a, n), _compile(b, n)

    def node(vals):
        va = fa(vals)
        if va < 0:
            return va
        vb = fb(vals)
        if vb < 0:
            return vb
        cell = off + va * n + vb
        v = vals[cell]
        return v if v >= 0 else -(cell + 1)
    return node


@dataclass
class _Instance:
    lhs: Callable
    rhs: Callable


@dataclass
class SearchStats:
    nodes: int = 0
    solutions: int = 0
    emitted: int = 0


def _solve_tables(meet, top, budget, stats: SearchStats) -> Iterator[tuple[tuple, tuple]]:
    """All (sim, bsim) pairs satisfying A2..A7 over a fixed meet table."""
    n = len(meet)
    ncell = 2 * n * n
    vals = [-1] * ncell
    for x in range(n):
        vals[_cell(n, 0, x, x)] = top
        vals[_cell(n, 1, x, x)] = top
        vals[_cell(n, 0, x, top)] = x
        vals[_cell(n, 1, top, x)] = x
    # A2 and A3 overlap only on (top, top) where both demand top.
    free = [c for c in range(ncell) if vals[c] < 0]
    # interleave sim[a][b] with bsim[b][a]: the two tables are near-transposes
    def order_key(c):
        t, rest = divmod(c, n * n)
        a, b = divmod(rest, n)
        return (a, b, t) if t == 0 else (b, a, t)
    free.sort(key=order_key)

    watchers: list[list[_Instance]] = [[] for _ in range(ncell)]

    def check(inst) -> int:
        """1 = holds, 0 = violated, -(cell+1) = waiting on cell."""
        l = inst.lhs(vals)
        if l < 0:
            return l
        r = inst.rhs(vals)
        if r < 0:
            return r
        return 1 if meet[l][r] == l else 0

    for lhs, rhs in _axiom_instances(meet, top):
        inst = _Instance(_compile(lhs, n), _compile(rhs, n))
        res = check(inst)
        if res == 0:
            return
        if res < 0:
            watchers[-res - 1].append(inst)

    trail: list[int] = []  # cells whose watcher list grew, for undo

    def assign(cell) -> bool:
        for inst in watchers[cell]:
            res = check(inst)
            if res == 0:
                return False
            if res < 0:
                c = -res - 1
                watchers[c].append(inst)
                trail.append(c)
        return True

    depth_marks: list[int] = []
    nfree = len(free)

    def rec(i):
        if i == nfree:
            stats.solutions += 1
            sim = tuple(tuple(vals[a * n + b] for b in range(n)) for a in range(n))
            off = n * n
            bsim = tuple(tuple(vals[off + a * n + b] for b in range(n)) for a in range(n))
            yield sim, bsim
            return
        cell = free[i]
        for v in range(n):
            stats.nodes += 1
            if stats.nodes > budget:
                raise BudgetExceeded(f"search visited more than {budget} nodes")
            vals[cell] = v
            mark = len(trail)
            ok = assign(cell)
            if ok:
                yield from rec(i + 1)
            while len(trail) > mark:
                watchers[trail.pop()].pop()
            vals[cell] = -1

    yield from rec(0)


def _canonical(sim, bsim, autos) -> bool:
    n = len(sim)
    key = (sim, bsim)
    for p in autos:
        inv = [0] * n
        for i, q in enumerate(p):
            inv[q] = i
        s2 = tuple(tuple(p[sim[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
        b2 = tuple(tuple(p[bsim[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
        if (s2, b2) < key:
            return False
    return True


def _skeleton_models(meet, budget, stats) -> list[FiniteEqAlgebra]:
    n = len(meet)
    top = n - 1
    autos = [p for p in automorphisms(meet) if any(p[i] != i for i in range(n))]
    out = []
    for sim, bsim in _solve_tables(meet, top, budget, stats):
        if _canonical(sim, bsim, autos):
            out.append((sim, bsim))
    out.sort()
    return [FiniteEqAlgebra(meet=meet, sim=s, bsim=b, top=top) for s, b in out]


def enumerate_algebras(size: int, cap: int = DEFAULT_SIZE_CAP, budget: Optional[int] = None,
                       stats: Optional[SearchStats] = None) -> Iterator[FiniteEqAlgebra]:
    """Every pseudo equality algebra on ``size`` elements, once per iso class.

    Output order is canonical: skeletons by flattened meet table, then
    solutions by flattened (sim, bsim).
    """
    if size < 1:
        raise PreconditionError("size must be at least 1")
    if size > cap:
        raise BudgetExceeded(f"size {size} exceeds the cap {cap}; raise the cap explicitly")
    budget = node_budget() if budget is None else budget
    stats = SearchStats() if stats is None else stats
    for meet in semilattices(size):
        for alg in _skeleton_models(meet, budget, stats):
            stats.emitted += 1
            yield alg


# -- isomorphism ---------------------------------------------------------------------

def relabel(alg: FiniteEqAlgebra, perm) -> FiniteEqAlgebra:
    """Rename element i to perm[i] in every table."""
    n = alg.n
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i

    def tab(t):
        return tuple(tuple(perm[t[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
    names = tuple(alg.names[inv[i]] for i in range(n))
    return FiniteEqAlgebra(meet=tab(alg.meet), sim=tab(alg.sim), bsim=tab(alg.bsim),
                           top=perm[alg.top], names=names)


def find_isomorphism(a: FiniteEqAlgebra, b: FiniteEqAlgebra) -> Optional[tuple[int, ...]]:
    """A bijection p with p(a) == b table-for-table, or None."""
    if a.n != b.n:
        return None
    n = a.n
    perm = [-1] * n
    used = [False] * n
    perm[a.top] = b.top
    used[b.top] = True
    order = [x for x in range(n) if x != a.top]

    def consistent():
        for x in range(n):
            px = perm[x]
            if px < 0:
                continue
            for y in range(n):
                py = perm[y]
                if py < 0:
                    continue
                for ta, tb in ((a.meet, b.meet), (a.sim, b.sim), (a.bsim, b.bsim)):
                    v = perm[ta[x][y]]
                    if v >= 0 and v != tb[px][py]:
                        return False
        return True

    def rec(i):
        if i == len(order):
            return True
        x = order[i]
        for v in range(n):
            if used[v]:
                continue
            perm[x], used[v] = v, True
            if consistent() and rec(i + 1):
                return True
            perm[x], used[v] = -1, False
        return False

    if rec(0):
        p = tuple(perm)
        if relabel(a, p).same_tables(b):
            return p
    return None


def canonical_key(alg: FiniteEqAlgebra) -> tuple:
    """Isomorphism-invariant key: least relabelled table triple over all bijections."""
    n = alg.n
    best = None
    for p in permutations(range(n)):
        r = relabel(alg, p)
        key = (r.top, r.meet, r.sim, r.bsim)
        if best is None or key < best:
            best = key
    return best


# -- predicates and counterexamples -----------------------------------------------

def predicate_registry() -> dict[str, Callable[[FiniteEqAlgebra], bool]]:
    from . import dedsys, translate

    def flag(name):
        return lambda alg: getattr(classify(alg), name)

    reg = {name[3:]: flag(name) for name in
           ("is_bounded", "is_lattice", "is_distributive_lattice", "is_linear",
            "is_invariant", "is_commutative", "is_symmetric")}
    reg["simple"] = dedsys.is_simple
    reg["psi_pD"] = lambda alg: translate.check_pD(translate.psi(alg))
    reg["psi_commutative"] = lambda alg: translate.check_bck_commutative(translate.psi(alg))
    return reg


PREDICATES = ("bounded", "lattice", "distributive_lattice", "linear", "invariant",
              "commutative", "symmetric", "simple", "psi_pD", "psi_commutative")


@dataclass
class SearchQuery:
    max_size: int
    require: list = field(default_factory=list)
    forbid: list = field(default_factory=list)
    limit: int = 1

    def __post_init__(self):
        if self.max_size < 1:
            raise PreconditionError("max_size must be at least 1")
        for name in list(self.require) + list(self.forbid):
            if name not in PREDICATES:
                raise PreconditionError(f"unknown predicate {name!r}; known: {', '.join(PREDICATES)}")


def search(q: SearchQuery, cap: int = DEFAULT_SIZE_CAP) -> list[FiniteEqAlgebra]:
    """Up to ``q.limit`` algebras (canonical order) matching the query."""
    reg = predicate_registry()
    found = []
    for size in range(1, q.max_size + 1):
        for alg in enumerate_algebras(size, cap=cap):
            if all(reg[p](alg) for p in q.require) and not any(reg[p](alg) for p in q.forbid):
                found.append(alg)
                if len(found) >= q.limit:
                    return found
    return found


def find_counterexample(q: SearchQuery, cap: int = DEFAULT_SIZE_CAP) -> Optional[FiniteEqAlgebra]:
    hits = search(SearchQuery(q.max_size, list(q.require), list(q.forbid), 1), cap=cap)
    return hits[0] if hits else None


def brute_force_count(size: int) -> int:
    """Iso classes of algebras on ``size`` elements by raw table enumeration.

    Independent of the skeleton/backtracking path; only feasible for
    ``size <= 2`` (it walks every meet/sim/bsim table).
    """
    if size > 2:
        raise BudgetExceeded("raw enumeration is only feasible up to 2 elements")
    n = size
    cells = n * n
    keys = set()
    for top in range(n):
        for flat in product(range(n), repeat=3 * cells):
            rows = [tuple(flat[k * n:(k + 1) * n]) for k in range(3 * n)]
            try:
                alg = FiniteEqAlgebra(meet=rows[:n], sim=rows[n:2 * n], bsim=rows[2 * n:], top=top)
            except Exception:
                continue
            if is_valid(alg):
                keys.add(canonical_key(alg))
    return len(keys)

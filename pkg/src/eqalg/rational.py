"""Exact rational linear algebra and polyhedral cones (double description).

Everything runs on :class:`fractions.Fraction`; there is no floating point
anywhere on this path, so cone equality is plain structural equality of the
canonical form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]


def vec(values: Iterable) -> Vec:
    return tuple(Fraction(v) for v in values)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _normalize(v: Vec) -> Vec:
    """Scale so that the first nonzero coordinate has absolute value 1."""
    for x in v:
        if x:
            s = abs(x)
            return tuple(y / s for y in v)
    return v


def rref(rows: Sequence[Sequence]) -> tuple[list[Vec], list[int]]:
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1]) if rows else 0


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vec]:
    """Basis of {x : rows . x = 0}."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> Vec:
    """Unique solution of a square nonsingular system."""
    n = len(a)
    red, pivots = rref([list(row) + [bi] for row, bi in zip(a, b)])
    if pivots != list(range(n)):
        raise ValueError("singular system")
    return tuple(row[n] for row in red)


def _project_out(v: Vec, basis: Sequence[Vec]) -> Vec:
    """Component of ``v`` orthogonal to span(basis)."""
    if not basis:
        return v
    gram = [[dot(p, q) for q in basis] for p in basis]
    coef = solve(gram, [dot(p, v) for p in basis])
    out = list(v)
    for c, p in zip(coef, basis):
        out = [x - c * y for x, y in zip(out, p)]
    return tuple(out)


@dataclass(frozen=True)
class Constraint:
    kind: str  # "eq" or "ge": coeffs . x == 0 or >= 0
    coeffs: Vec

    def holds(self, x: Sequence[Fraction]) -> bool:
        v = dot(self.coeffs, x)
        return v == 0 if self.kind == "eq" else v >= 0


def _integral(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Positive multiple of ``v`` with coprime integer entries."""
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [x.numerator * (den // x.denominator) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints) if g > 1 else tuple(ints)


def _reduce(v: list[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _int_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        for i in range(r + 1, len(m)):
            f = m[i][c]
            if f:
                m[i] = [pv * x - f * y for x, y in zip(m[i], m[r])]
                m[i] = list(_reduce(m[i])) if any(m[i]) else m[i]
        r += 1
        if r == len(m):
            break
    return r


def _idot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def double_description(dim: int, constraints: Sequence[Constraint]) -> tuple[list[Vec], list[Vec]]:
    """Generators (lineality basis, extreme rays) of {x : constraints}.

    Starts from the whole space and intersects one half-space at a time,
    equalities first.  Adjacency of two rays is decided by the rank test on
    their common tight constraints.  Arithmetic is on coprime integer
    vectors, which represent the same rays as the rational ones.
    """
    halves: list[tuple[int, ...]] = []
    seen = set()
    ordered = [c for c in constraints if c.kind == "eq"] + [c for c in constraints if c.kind != "eq"]
    for c in ordered:
        a = _integral(c.coeffs)
        pair = (a, tuple(-x for x in a)) if c.kind == "eq" else (a,)
        for h in pair:
            if any(h) and h not in seen:
                seen.add(h)
                halves.append(h)
    lin: list[tuple[int, ...]] = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays: list[tuple[tuple[int, ...], frozenset]] = []  # (ray, indices of tight constraints)
    done: list[tuple[int, ...]] = []
    for a in halves:
        idx = len(done)
        k = next((i for i, l in enumerate(lin) if _idot(a, l)), None)
        if k is not None:
            l = lin.pop(k)
            al = _idot(a, l)
            if al < 0:
                l, al = tuple(-x for x in l), -al
            lin = [_reduce([al * x - _idot(a, m) * y for x, y in zip(m, l)]) for m in lin]
            rays = [(_reduce([al * x - _idot(a, r) * y for x, y in zip(r, l)]), t | {idx})
                    for r, t in rays]
            rays.append((l, frozenset(range(idx))))
            done.append(a)
            continue
        vals = [_idot(a, r) for r, _ in rays]
        keep = [(r, t | {idx} if v == 0 else t) for (r, t), v in zip(rays, vals) if v >= 0]
        neg = [(r, t, v) for (r, t), v in zip(rays, vals) if v < 0]
        if neg:
            target = dim - len(lin) - 2
            for (p, tp), ap in zip(rays, vals):
                if ap <= 0:
                    continue
                for q, tq, aq in neg:
                    common = tp & tq
                    if len(common) < target:
                        continue
                    if _int_rank([done[i] for i in common]) != target:
                        continue
                    # a . (ap q - aq p) = 0 with both coefficients positive
                    w = _reduce([ap * y - aq * x for x, y in zip(p, q)])
                    keep.append((w, common | {idx}))
        rays = keep
        done.append(a)
    return [vec(l) for l in lin], [vec(r) for r, _ in rays]


@dataclass(frozen=True)
class RationalCone:
    """A polyhedral cone {x : constraints} together with its generators.

    ``lineality`` is in reduced row echelon form; ``rays`` are projected
    onto the orthogonal complement of the lineality space, scaled so that
    the first nonzero coordinate is +-1, and sorted.  Two cones are equal
    as sets exactly when (dim, lineality, rays) coincide.
    """

    dim: int
    lineality: tuple[Vec, ...]
    rays: tuple[Vec, ...]
    constraints: tuple[Constraint, ...] = field(default=(), compare=False)

    @classmethod
    def from_constraints(cls, dim: int, constraints: Iterable[Constraint]) -> "RationalCone":
        constraints = tuple(constraints)
        for c in constraints:
            if len(c.coeffs) != dim:
                raise ValueError("constraint has the wrong dimension")
        lin, rays = double_description(dim, constraints)
        return cls._canonical(dim, lin, rays, constraints)

    @classmethod
    def from_generators(cls, dim: int, lineality: Iterable, rays: Iterable) -> "RationalCone":
        """Cone spanned by the given generators; constraints come from the dual."""
        lineality = [vec(v) for v in lineality]
        rays = [vec(v) for v in rays]
        dual = [Constraint("eq", l) for l in lineality] + [Constraint("ge", r) for r in rays]
        dlin, drays = double_description(dim, dual)
        facets = [Constraint("eq", l) for l in dlin] + [Constraint("ge", r) for r in drays]
        return cls.from_constraints(dim, facets)

    @classmethod
    def _canonical(cls, dim, lin, rays, constraints) -> "RationalCone":
        red, _ = rref(lin) if lin else ([], [])
        basis = [tuple(r) for r in red]
        out = set()
        for r in rays:
            p = _normalize(_project_out(r, basis))
            if any(p):
                out.add(p)
        return cls(dim, tuple(basis), tuple(sorted(out)), tuple(constraints))

    # -- queries ---------------------------------------------------------------

    def generators(self) -> list[Vec]:
        """Rays plus both signs of every lineality vector."""
        return list(self.rays) + list(self.lineality) + [tuple(-x for x in l) for l in self.lineality]

    def contains(self, x: Sequence) -> bool:
        x = vec(x)
        if self.constraints:
            return all(c.holds(x) for c in self.constraints)
        return self.facets().contains(x)

    def facets(self) -> "RationalCone":
        """Same cone with an irredundant constraint description from the dual."""
        dual = [Constraint("eq", l) for l in self.lineality] + [Constraint("ge", r) for r in self.rays]
        dlin, drays = double_description(self.dim, dual)
        cons = [Constraint("eq", l) for l in dlin] + [Constraint("ge", r) for r in drays]
        return RationalCone(self.dim, self.lineality, self.rays, tuple(cons))

    def is_pointed(self) -> bool:
        return not self.lineality

    def subset_of(self, other: "RationalCone") -> bool:
        if self.dim != other.dim:
            return False
        return all(other.contains(g) for g in self.generators())

    def same_set(self, other: "RationalCone") -> bool:
        return self.dim == other.dim and self.lineality == other.lineality and self.rays == other.rays

    def intersect(self, other: "RationalCone") -> "RationalCone":
        a = self.constraints or self.facets().constraints
        b = other.constraints or other.facets().constraints
        return RationalCone.from_constraints(self.dim, tuple(a) + tuple(b))

    def serialize(self) -> str:
        lines = [f"dim {self.dim}"]
        lines += ["L " + " ".join(str(x) for x in l) for l in self.lineality]
        lines += ["R " + " ".join(str(x) for x in r) for r in self.rays]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "RationalCone":
        dim = None
        lin, rays = [], []
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            tag, _, rest = line.partition(" ")
            if tag == "dim":
                dim = int(rest)
            elif tag == "L":
                lin.append(vec(rest.split()))
            elif tag == "R":
                rays.append(vec(rest.split()))
            else:
                raise ValueError(f"unknown cone line {line!r}")
        if dim is None:
            raise ValueError("missing dim line")
        return cls.from_generators(dim, lin, rays)

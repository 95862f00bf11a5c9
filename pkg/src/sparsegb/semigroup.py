"""Affine semigroups, their homogenisation and monomial orderings.

``S_M`` is generated by a finite set ``M`` of integer vectors containing
the origin.  A monomial of the homogeneous semigroup ``S_M^(h)`` is the
pair ``(exponent, degree)``; the exponent alone does not identify it.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import NamedTuple, Sequence

import numpy as np
import sympy as sp
from sympy.solvers.simplex import lpmax

Exp = tuple[int, ...]


class SemigroupError(ValueError):
    pass


class Monomial(NamedTuple):
    exp: Exp
    degree: int


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def validate_pointed(gens: Sequence[Sequence[int]]) -> Exp:
    """Integer linear form strictly positive on every nonzero generator.

    Solves ``max t  s.t.  c.g >= t, -1 <= c_k <= 1, t <= 1`` exactly over
    the rationals; the semigroup is pointed iff the optimum is positive.
    """
    gens = [tuple(g) for g in gens]
    nonzero = [g for g in gens if any(g)]
    if not gens:
        raise SemigroupError("empty generator set")
    n = len(gens[0])
    if not nonzero or all(x >= 0 for g in nonzero for x in g):
        return (1,) * n
    cs = sp.symbols(f"c0:{n}")
    t = sp.Symbol("t")
    constr = [sum(ci * gi for ci, gi in zip(cs, g)) >= t for g in nonzero]
    constr += [c <= 1 for c in cs] + [c >= -1 for c in cs] + [t <= 1]
    best, sol = lpmax(t, constr)
    if best <= 0:
        raise SemigroupError("generators do not span a pointed semigroup")
    vals = [Fraction(int(sp.numer(sol.get(c, 0))), int(sp.denom(sol.get(c, 0)))) for c in cs]
    den = lcm(*(v.denominator for v in vals))
    form = tuple(int(v * den) for v in vals)
    assert all(_dot(form, g) > 0 for g in nonzero)
    return form


class GeneratorSet:
    """The finite set ``M`` (origin included) with a pointedness witness."""

    def __init__(self, gens: Sequence[Sequence[int]], positive_form: Sequence[int] | None = None):
        pts = []
        for g in gens:
            g = tuple(int(x) for x in g)
            if g not in pts:
                pts.append(g)
        if not pts:
            raise SemigroupError("empty generator set")
        self.dim = len(pts[0])
        if any(len(g) != self.dim for g in pts):
            raise SemigroupError("generators of mixed dimension")
        origin = (0,) * self.dim
        if origin not in pts:
            raise SemigroupError("the origin must belong to the generator set")
        pts.remove(origin)
        self.gens: tuple[Exp, ...] = (origin, *sorted(pts))
        self.nonzero: tuple[Exp, ...] = tuple(sorted(pts))
        if positive_form is None:
            positive_form = validate_pointed(self.gens)
        elif any(_dot(positive_form, g) <= 0 for g in self.nonzero):
            raise SemigroupError("given form is not positive on the generators")
        self.positive_form: Exp = tuple(positive_form)
        self._cmin = min((_dot(self.positive_form, g) for g in self.nonzero), default=1)
        self._units = all(tuple(int(i == k) for i in range(self.dim)) in self.nonzero for k in range(self.dim))
        self._degree: dict[Exp, int | None] = {origin: 0}

    def __repr__(self):
        return f"GeneratorSet({list(self.gens)})"

    def __len__(self):
        return len(self.gens)

    def rank(self) -> int:
        if not self.nonzero:
            return 0
        return int(np.linalg.matrix_rank(np.array(self.nonzero, dtype=float)))

    def degree_of(self, v: Sequence[int]) -> int | None:
        """Fewest nonzero generators summing to ``v``; ``None`` if ``v`` is not in ``S_M``."""
        v = tuple(v)
        memo = self._degree
        if v in memo:
            return memo[v]
        val = _dot(self.positive_form, v)
        if val < self._cmin:
            memo[v] = None
            return None
        limit = sys.getrecursionlimit()
        if val // self._cmin + 100 > limit:
            sys.setrecursionlimit(val // self._cmin + 200)
        best = None
        for g in self.nonzero:
            d = self.degree_of(tuple(a - b for a, b in zip(v, g)))
            if d is not None and (best is None or d + 1 < best):
                best = d + 1
        memo[v] = best
        return best

    def contains(self, v: Sequence[int]) -> bool:
        if self._units and all(x >= 0 for x in v):
            return True
        return self.degree_of(v) is not None


def _representable(v: Exp, gens: Sequence[Exp], form: Exp, memo: dict) -> bool:
    if not any(v):
        return True
    if v in memo:
        return memo[v]
    memo[v] = False
    if _dot(form, v) > 0:
        for g in gens:
            if _representable(tuple(a - b for a, b in zip(v, g)), gens, form, memo):
                memo[v] = True
                break
    return memo[v]


def hilbert_basis(gens: GeneratorSet | Sequence[Sequence[int]]) -> list[Exp]:
    """Nonzero generators that are not sums of other generators."""
    if not isinstance(gens, GeneratorSet):
        gens = GeneratorSet(gens)
    out = []
    for m in gens.nonzero:
        others = [g for g in gens.nonzero if g != m]
        if not _representable(m, others, gens.positive_form, {}):
            out.append(m)
    return out


@dataclass(frozen=True)
class MonomialOrder:
    """Lexicographic comparison of ``W . exponent`` for a full-rank ``W``.

    With ``graded`` set, monomials ``(exponent, degree)`` of the
    homogenised semigroup compare by degree first.
    """

    weights: tuple[Exp, ...]
    graded: bool = False

    def __post_init__(self):
        W = np.array(self.weights, dtype=float)
        if W.ndim != 2 or W.shape[0] != W.shape[1] or np.linalg.matrix_rank(W) < W.shape[0]:
            raise SemigroupError("weight matrix must be square of full rank")

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.weights, dtype=np.int64)

    def key(self, m) -> tuple[int, ...]:
        if isinstance(m, Monomial):
            k = tuple(_dot(w, m.exp) for w in self.weights)
            return (m.degree, *k) if self.graded else k
        return tuple(_dot(w, m) for w in self.weights)

    def compare(self, a, b) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def as_graded(self) -> "MonomialOrder":
        return MonomialOrder(self.weights, True)

    def as_affine(self) -> "MonomialOrder":
        return MonomialOrder(self.weights, False)


def default_order(gens: GeneratorSet, graded: bool = False) -> MonomialOrder:
    rows = [gens.positive_form]
    n = gens.dim
    for k in range(n):
        if len(rows) == n:
            break
        e = tuple(int(i == k) for i in range(n))
        if np.linalg.matrix_rank(np.array(rows + [e], dtype=float)) > len(rows):
            rows.append(e)
    return MonomialOrder(tuple(rows), graded)


def compare(order: MonomialOrder, a, b) -> int:
    return order.compare(a, b)


def sort_desc(exps: np.ndarray, order: MonomialOrder) -> np.ndarray:
    """Permutation sorting exponent rows in decreasing order."""
    if len(exps) == 0:
        return np.zeros(0, dtype=np.int64)
    K = exps @ order.matrix.T
    return np.lexsort(tuple(-K[:, j] for j in reversed(range(K.shape[1]))))


@dataclass
class _Level:
    exps: np.ndarray            # (N, n), decreasing under the order
    parent: np.ndarray          # index into the previous level
    gen: np.ndarray             # index into GeneratorSet.gens
    index: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.exps)


class MonomialLadder:
    """Degree levels ``L_0, L_1, ...`` of ``S_M^(h)``.

    ``L_d`` holds the exponents of degree-``d`` monomials, sorted
    decreasingly under ``order``; each records one (parent, generator)
    pair witnessing it as a product of a degree ``d-1`` monomial and a
    generator.
    """

    def __init__(self, gens: GeneratorSet, order: MonomialOrder | None = None):
        self.gens = gens
        self.order = (order or default_order(gens)).as_affine()
        self._G = np.array(gens.gens, dtype=np.int64)
        origin = np.zeros((1, gens.dim), dtype=np.int64)
        lvl = _Level(origin, np.zeros(1, dtype=np.int64), np.zeros(1, dtype=np.int64))
        lvl.index = {(0,) * gens.dim: 0}
        self.levels: list[_Level] = [lvl]

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def extend(self, d: int) -> "MonomialLadder":
        while self.depth < d:
            prev = self.levels[-1].exps
            g = len(self._G)
            cand = (prev[:, None, :] + self._G[None, :, :]).reshape(-1, self.gens.dim)
            uniq, first = np.unique(cand, axis=0, return_index=True)
            perm = sort_desc(uniq, self.order)
            exps, first = uniq[perm], first[perm]
            lvl = _Level(exps, first // g, first % g)
            lvl.index = {tuple(int(x) for x in row): i for i, row in enumerate(exps)}
            self.levels.append(lvl)
        return self

    def level(self, d: int) -> np.ndarray:
        self.extend(d)
        return self.levels[d].exps

    def size(self, d: int) -> int:
        self.extend(d)
        return len(self.levels[d])

    def index(self, d: int) -> dict:
        self.extend(d)
        return self.levels[d].index

    def monomials(self, d: int) -> list[Monomial]:
        return [Monomial(tuple(int(x) for x in row), d) for row in self.level(d)]

    def contains(self, exp: Sequence[int], d: int) -> bool:
        if d < 0:
            return False
        return tuple(exp) in self.index(d)

    def predecessor(self, m: Monomial) -> tuple[Monomial, Exp]:
        lvl = self.levels[m.degree]
        i = lvl.index[m.exp]
        parent = tuple(int(x) for x in self.levels[m.degree - 1].exps[lvl.parent[i]])
        return Monomial(parent, m.degree - 1), self.gens.gens[int(lvl.gen[i])]

    def positions(self, d: int, exps: np.ndarray) -> np.ndarray:
        """Indices in ``L_d`` of the rows of ``exps`` (all must be present)."""
        idx = self.index(d)
        return np.fromiter((idx[tuple(r)] for r in exps.tolist()), dtype=np.int64, count=len(exps))


def divides(a: Monomial, b: Monomial, ladder: MonomialLadder) -> bool:
    """Divisibility of homogeneous monomials in ``k[S_M^(h)]``."""
    k = b.degree - a.degree
    if k < 0:
        return False
    return ladder.contains(tuple(x - y for x, y in zip(b.exp, a.exp)), k)

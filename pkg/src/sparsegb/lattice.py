"""Lattice polytopes, Ehrhart data and integer linear algebra.

Points are tuples of ints.  A polytope is given by its lattice points
(one of them the origin) and optionally by facet inequalities
``normal . x <= offset``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, prod
from typing import Iterable, Iterator, Sequence

import numpy as np

Point = tuple[int, ...]


class PolytopeError(ValueError):
    pass


@dataclass(frozen=True)
class Facet:
    normal: Point
    offset: int

    def holds(self, x: Sequence[int], scale: int = 1) -> bool:
        return sum(a * b for a, b in zip(self.normal, x)) <= scale * self.offset


@dataclass(frozen=True)
class PolytopeSpec:
    points: frozenset[Point]
    dim: int
    facets: tuple[Facet, ...] | None = None
    normal_declared: bool = False
    # product blocks (n_i, d_i) when built from scaled simplices
    blocks: tuple[tuple[int, int], ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        origin = (0,) * self.dim
        if origin not in self.points:
            raise PolytopeError("polytope must contain the origin")
        if any(len(q) != self.dim for q in self.points):
            raise PolytopeError("point of wrong dimension")
        if self.facets is not None:
            for q in self.points:
                if not all(f.holds(q) for f in self.facets):
                    raise PolytopeError(f"point {q} violates a facet inequality")
        if np.linalg.matrix_rank(np.array(sorted(self.points), dtype=float)) < self.dim:
            raise PolytopeError("points do not span the ambient space")

    def sorted_points(self) -> list[Point]:
        return sorted(self.points)


@dataclass(frozen=True)
class EhrhartData:
    hp_values: tuple[int, ...]
    ehrhart_coeffs: tuple[Fraction, ...]
    numerator: tuple[int, ...]
    regularity: int
    volume: int

    def hp(self, d: int) -> Fraction:
        """Evaluate the Ehrhart polynomial at ``d``."""
        return sum((c * d**k for k, c in enumerate(self.ehrhart_coeffs)), Fraction(0))

    def hilbert_series(self, nterms: int) -> list[int]:
        return [int(self.hp(d)) for d in range(nterms)]


def _sumset(A: Iterable[Point], B: Iterable[Point]) -> set[Point]:
    B = list(B)
    return {tuple(a + b for a, b in zip(x, y)) for x in A for y in B}


def dilation_points(P: PolytopeSpec, d: int) -> set[Point]:
    """Lattice points of ``d * P``."""
    if d < 0:
        raise ValueError("dilation factor must be non-negative")
    if P.normal_declared:
        level = {(0,) * P.dim}
        for _ in range(d):
            level = _sumset(level, P.points)
        return level
    if P.facets is None:
        raise PolytopeError("facets are required for a polytope not declared normal")
    return _facet_points(P, d)


def _facet_points(P: PolytopeSpec, d: int) -> set[Point]:
    pts = np.array(sorted(P.points), dtype=np.int64)
    lo, hi = d * pts.min(axis=0), d * pts.max(axis=0)
    ranges = [range(int(a), int(b) + 1) for a, b in zip(lo, hi)]
    return {x for x in itertools.product(*ranges) if all(f.holds(x, d) for f in P.facets)}


def normality_check(P: PolytopeSpec, D: int) -> bool:
    """Compare sumsets with facet enumeration for every dilation up to ``D``."""
    if P.facets is None:
        raise PolytopeError("normality check needs facets")
    level = {(0,) * P.dim}
    for d in range(1, D + 1):
        level = _sumset(level, P.points)
        if level != _facet_points(P, d):
            return False
    return True


def _interpolate(values: Sequence[int]) -> tuple[Fraction, ...]:
    # Newton forward differences, then expand the binomial basis.
    diffs, row = [], [Fraction(v) for v in values]
    while row:
        diffs.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    coeffs = [Fraction(0)] * len(values)
    basis = [Fraction(1)]  # coefficients of C(d, k) in powers of d
    for k, delta in enumerate(diffs):
        for i, c in enumerate(basis):
            coeffs[i] += delta * c
        # C(d, k+1) = C(d, k) * (d - k) / (k + 1)
        nxt = [Fraction(0)] * (len(basis) + 1)
        for i, c in enumerate(basis):
            nxt[i + 1] += c / (k + 1)
            nxt[i] -= c * k / (k + 1)
        basis = nxt
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def numerator_from_hp(hp: Sequence[int], n: int) -> tuple[int, ...]:
    q = [sum((-1) ** i * comb(n + 1, i) * hp[j - i] for i in range(j + 1)) for j in range(n + 1)]
    while len(q) > 1 and q[-1] == 0:
        q.pop()
    return tuple(q)


def ehrhart_data(P: PolytopeSpec) -> EhrhartData:
    n = P.dim
    hp = tuple(len(dilation_points(P, d)) for d in range(n + 1))
    q = numerator_from_hp(hp, n)
    if any(c < 0 for c in q):
        raise PolytopeError(f"negative h*-coefficient {q}: polytope is not normal")
    coeffs = _interpolate(hp)
    vol = sum(q)
    if coeffs[-1] * factorial(n) != vol:
        raise PolytopeError("Ehrhart leading coefficient disagrees with the numerator")
    return EhrhartData(hp, coeffs, q, len(q) - 1, vol)


# --- families ----------------------------------------------------------------

def _bounded_sum(n: int, d: int) -> Iterator[Point]:
    # nonnegative integer vectors of length n with coordinate sum <= d
    if n == 0:
        yield ()
        return
    for a in range(d + 1):
        for rest in _bounded_sum(n - 1, d - a):
            yield (a, *rest)


def simplex(n: int, d: int = 1) -> PolytopeSpec:
    if n <= 0 or d <= 0:
        raise PolytopeError("simplex needs positive dimension and scale")
    pts = frozenset(_bounded_sum(n, d))
    facets = [Facet(tuple(-int(i == k) for i in range(n)), 0) for k in range(n)]
    facets.append(Facet((1,) * n, d))
    return PolytopeSpec(pts, n, tuple(facets), True, ((n, d),))


def product(*polys: PolytopeSpec) -> PolytopeSpec:
    if not polys:
        raise PolytopeError("empty product")
    n = sum(P.dim for P in polys)
    pts = frozenset(tuple(itertools.chain(*combo)) for combo in itertools.product(*(P.sorted_points() for P in polys)))
    facets = None
    if all(P.facets is not None for P in polys):
        facets, shift = [], 0
        for P in polys:
            for f in P.facets:
                normal = (0,) * shift + f.normal + (0,) * (n - shift - P.dim)
                facets.append(Facet(normal, f.offset))
            shift += P.dim
        facets = tuple(facets)
    blocks = None
    if all(P.blocks is not None for P in polys):
        blocks = tuple(b for P in polys for b in P.blocks)
    return PolytopeSpec(pts, n, facets, all(P.normal_declared for P in polys), blocks)


def scaled(P: PolytopeSpec, c: int) -> PolytopeSpec:
    if c <= 0:
        raise PolytopeError("scale must be positive")
    facets = None if P.facets is None else tuple(Facet(f.normal, c * f.offset) for f in P.facets)
    blocks = None if P.blocks is None else tuple((n, d * c) for n, d in P.blocks)
    return PolytopeSpec(frozenset(dilation_points(P, c)), P.dim, facets, P.normal_declared, blocks)


def polytope_family(kind: str, *params) -> PolytopeSpec:
    if kind == "simplex":
        return simplex(*params)
    if kind == "product":
        return product(*params)
    if kind == "scaled":
        return scaled(*params)
    raise PolytopeError(f"unknown polytope family {kind!r}")


def product_volume(blocks: Sequence[tuple[int, int]]) -> int:
    """Normalised volume of a product of scaled simplices ``d_i * Delta_{n_i}``."""
    n = sum(b for b, _ in blocks)
    multinomial = factorial(n) // prod(factorial(b) for b, _ in blocks)
    return multinomial * prod(d**b for b, d in blocks)


# --- integer linear algebra ----------------------------------------------------

def hermite_normal_form(A: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[int]]:
    """Column-style Hermite normal form.

    Returns ``(H, U, pivot_rows)`` with ``H = A U``, ``U`` unimodular,
    ``H`` lower echelon: column ``k`` has its first nonzero entry, which is
    positive, in row ``pivot_rows[k]``, and the entries to its left in that
    row are reduced into ``[0, pivot)``.  Columns past ``len(pivot_rows)``
    are zero.
    """
    H = [list(map(int, row)) for row in A]
    n = len(H)
    r = len(H[0]) if n else 0
    U = [[int(i == j) for j in range(r)] for i in range(r)]

    def colop(j: int, k: int, a: int, b: int, c: int, d: int) -> None:
        # (col_j, col_k) <- (a col_j + b col_k, c col_j + d col_k)
        for M in (H, U):
            for row in M:
                x, y = row[j], row[k]
                row[j], row[k] = a * x + b * y, c * x + d * y

    pivots: list[int] = []
    k = 0
    for i in range(n):
        if k == r:
            break
        for j in range(k + 1, r):
            while H[i][j] != 0:
                q = H[i][k] // H[i][j]
                # col_k -= q col_j, then swap
                colop(k, j, 0, 1, 1, -q)
        if H[i][k] == 0:
            continue
        if H[i][k] < 0:
            for M in (H, U):
                for row in M:
                    row[k] = -row[k]
        for j in range(k):
            q = H[i][j] // H[i][k]
            if q:
                for M in (H, U):
                    for row in M:
                        row[j] -= q * row[k]
        pivots.append(i)
        k += 1
    return H, U, pivots


def lattice_index(A: Sequence[Sequence[int]]) -> int:
    """Index of the column lattice of ``A`` in ``Z^n``; 0 if not full rank."""
    H, _, piv = hermite_normal_form(A)
    if len(piv) < len(H):
        return 0
    return prod(H[i][k] for k, i in enumerate(piv))


def integer_solve(A: Sequence[Sequence[int]], b: Sequence[int]) -> list[int] | None:
    """Integer ``x`` with ``A x = b``, or ``None`` if ``b`` is outside the column lattice."""
    H, U, piv = hermite_normal_form(A)
    n = len(H)
    r = len(U)
    y = [0] * r
    k = 0
    for i in range(n):
        acc = b[i] - sum(H[i][j] * y[j] for j in range(k))
        if k < len(piv) and piv[k] == i:
            q, rem = divmod(acc, H[i][k])
            if rem:
                return None
            y[k] = q
            k += 1
        elif acc != 0:
            return None
    return [sum(U[i][j] * y[j] for j in range(r)) for i in range(r)]

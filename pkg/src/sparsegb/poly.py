"""Sparse polynomials over GF(p) in semigroup algebras ``k[S_M]`` and ``k[S_M^(h)]``."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .ffield import inv
from .semigroup import Exp, GeneratorSet, Monomial, MonomialLadder, MonomialOrder, SemigroupError


class SupportError(ValueError):
    pass


@dataclass(frozen=True)
class SparsePolynomial:
    """Terms ``(exponent, coefficient)`` sorted strictly decreasing.

    ``degree`` is set for homogeneous elements of ``k[S_M^(h)]``; every
    term then stands for the monomial ``(exponent, degree)``.
    """

    terms: tuple[tuple[Exp, int], ...]
    order: MonomialOrder
    p: int
    degree: int | None = None

    @classmethod
    def from_terms(cls, terms: Mapping[Exp, int] | Iterable[tuple[Exp, int]], order: MonomialOrder,
                   p: int, degree: int | None = None) -> "SparsePolynomial":
        acc: dict[Exp, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            e = tuple(int(x) for x in e)
            acc[e] = (acc.get(e, 0) + c) % p
        order = order.as_affine()
        ordered = sorted(((e, c) for e, c in acc.items() if c), key=lambda t: order.key(t[0]), reverse=True)
        return cls(tuple(ordered), order, p, degree)

    def _new(self, terms, degree=...) -> "SparsePolynomial":
        return SparsePolynomial.from_terms(terms, self.order, self.p, self.degree if degree is ... else degree)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def homogeneous(self) -> bool:
        return self.degree is not None

    @property
    def lm(self) -> Exp:
        return self.terms[0][0]

    @property
    def lc(self) -> int:
        return self.terms[0][1]

    def leading_monomial(self) -> Monomial | Exp:
        return Monomial(self.lm, self.degree) if self.homogeneous else self.lm

    def support(self) -> list[Exp]:
        return [e for e, _ in self.terms]

    def as_dict(self) -> dict[Exp, int]:
        return dict(self.terms)

    def __add__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        if self.degree != other.degree and self and other:
            raise ValueError("adding homogeneous polynomials of different degrees")
        return self._new(list(self.terms) + list(other.terms), self.degree if self else other.degree)

    def __neg__(self) -> "SparsePolynomial":
        return self.scale(-1)

    def __sub__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        return self + (-other)

    def scale(self, c: int) -> "SparsePolynomial":
        c %= self.p
        return SparsePolynomial(tuple((e, a * c % self.p) for e, a in self.terms), self.order, self.p,
                                self.degree) if c else self._new(())

    def monic(self) -> "SparsePolynomial":
        return self.scale(inv(self.lc, self.p)) if self else self

    def shift(self, exp: Sequence[int], k: int = 0) -> "SparsePolynomial":
        """Multiply by the monomial ``X^exp`` (of degree ``k`` when homogeneous)."""
        terms = tuple((tuple(a + b for a, b in zip(e, exp)), c) for e, c in self.terms)
        deg = None if self.degree is None else self.degree + k
        return SparsePolynomial(terms, self.order, self.p, deg)

    def evaluate(self, x: Sequence[int]) -> int:
        """Value at a torus point (negative exponents use inverses)."""
        p = self.p
        total = 0
        for e, c in self.terms:
            v = c
            for xi, ei in zip(x, e):
                v = v * pow(xi, ei, p) % p
            total += v
        return total % p

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        tag = f"@{self.degree}" if self.homogeneous else ""
        return " + ".join(f"{c}*X^{e}" for e, c in self.terms) + tag


def degree_in(f: SparsePolynomial, gens: GeneratorSet) -> int:
    """Smallest ``d`` with every support exponent in ``L_d``."""
    deg = 0
    for e, _ in f.terms:
        k = gens.degree_of(e)
        if k is None:
            raise SemigroupError(f"exponent {e} is not in the semigroup")
        deg = max(deg, k)
    return deg


def homogenize(f: SparsePolynomial, ladder: MonomialLadder | GeneratorSet) -> SparsePolynomial:
    gens = ladder.gens if isinstance(ladder, MonomialLadder) else ladder
    return SparsePolynomial(f.terms, f.order, f.p, degree_in(f, gens))


def dehomogenize(h: SparsePolynomial) -> SparsePolynomial:
    return SparsePolynomial(h.terms, h.order, h.p, None)


class _Reducer:
    def __init__(self, G: Sequence[SparsePolynomial], gens: GeneratorSet):
        self.gens = gens
        c = gens.positive_form
        self.items = []
        for g in G:
            if g:
                self.items.append((g.lm, sum(a * b for a, b in zip(c, g.lm)), inv(g.lc, g.p), g))

    def find(self, s: Exp, cval: int):
        for lm, lval, linv, g in self.items:
            if lval <= cval and self.gens.contains(tuple(a - b for a, b in zip(s, lm))):
                return lm, linv, g
        return None


def normal_form(f: SparsePolynomial, G: Sequence[SparsePolynomial], gens: GeneratorSet) -> SparsePolynomial:
    """Fully reduce ``f`` by ``G`` in ``k[S_M]``.

    The largest remaining monomial is reduced by the first basis element
    whose leading monomial divides it, until no monomial is divisible.
    """
    if not G or not f:
        return f
    p, order = f.p, f.order
    red = _Reducer(G, gens)
    c = gens.positive_form
    keys: dict[Exp, tuple] = {}

    def neg_key(e: Exp) -> tuple:
        k = keys.get(e)
        if k is None:
            k = keys[e] = tuple(-x for x in order.key(e))
        return k

    coeffs = dict(f.terms)
    heap = [(neg_key(e), e) for e in coeffs]
    heapq.heapify(heap)
    out = []
    while heap:
        _, s = heapq.heappop(heap)
        a = coeffs.pop(s, 0)
        if not a:
            continue
        hit = red.find(s, sum(x * y for x, y in zip(c, s)))
        if hit is None:
            out.append((s, a))
            continue
        lm, linv, g = hit
        factor = a * linv % p
        shift = tuple(x - y for x, y in zip(s, lm))
        for t, b in g.terms[1:]:
            u = tuple(x + y for x, y in zip(t, shift))
            old = coeffs.get(u)
            val = ((old or 0) - factor * b) % p
            if old is None:
                heapq.heappush(heap, (neg_key(u), u))
            coeffs[u] = val
    return SparsePolynomial(tuple(out), order, p, f.degree)


def interreduce(G: Sequence[SparsePolynomial], gens: GeneratorSet) -> list[SparsePolynomial]:
    """Reduced basis: monic, minimal leading monomials, fully reduced tails."""
    polys = [g.monic() for g in G if g]
    while True:
        polys.sort(key=lambda g: g.order.key(g.lm))
        out: list[SparsePolynomial] = []
        moved = False
        for i, g in enumerate(polys):
            h = normal_form(g, out + polys[i + 1:], gens)
            if not h or h.lm != g.lm:
                moved = True
            if h:
                out.append(h.monic())
        polys = out
        # once no leading monomial moves, every tail is reduced w.r.t. the final set
        if not moved:
            return polys


def translate_support(F: Sequence[Mapping[Exp, int]]) -> tuple[GeneratorSet, list[dict[Exp, int]], Exp]:
    """Shift Laurent supports so a vertex of their union sits at the origin.

    Returns the generator set (the translated union), the translated
    polynomials and the shift that was subtracted from every exponent.
    """
    union = sorted({tuple(e) for f in F for e in f})
    if not union:
        raise SupportError("empty support")
    n = len(union[0])
    vertex = min(union, key=lambda e: (sum(e), e))
    shifted = [{tuple(a - b for a, b in zip(e, vertex)): c for e, c in f.items()} for f in F]
    pts = [tuple(a - b for a, b in zip(e, vertex)) for e in union]
    try:
        gens = GeneratorSet(pts)
    except SemigroupError as exc:
        raise SupportError(f"support cannot be made pointed by translation: {exc}") from exc
    if gens.rank() < n:
        raise SupportError("support does not span a full-rank lattice")
    return gens, shifted, vertex

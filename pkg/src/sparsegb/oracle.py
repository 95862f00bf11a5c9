"""Naive reference engines used to cross-check the sparse solver.

Nothing here imports the solver's arithmetic: polynomials are plain
dicts ``{exponent: coefficient}``, orderings are key functions and
ranks come from a textbook Gaussian elimination with row swaps.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

Exp = tuple[int, ...]
Poly = dict[Exp, int]


def lex_key(e: Exp) -> tuple:
    return tuple(e)


def grevlex_key(e: Exp) -> tuple:
    return (sum(e), tuple(-x for x in reversed(e)))


def weight_key(W: Sequence[Sequence[int]]) -> Callable[[Exp], tuple]:
    W = [tuple(w) for w in W]
    return lambda e: tuple(sum(a * b for a, b in zip(w, e)) for w in W)


def ordering_key(ordering) -> Callable[[Exp], tuple]:
    if ordering == "lex":
        return lex_key
    if ordering == "grevlex":
        return grevlex_key
    if callable(ordering):
        return ordering
    return weight_key(ordering)


@dataclass
class ClassicalPoly:
    """Canonical sorted form of a dict polynomial, for comparisons."""

    terms: tuple[tuple[Exp, int], ...]

    @classmethod
    def of(cls, f: Mapping[Exp, int], key, p: int) -> "ClassicalPoly":
        return cls(tuple(sorted(((tuple(e), c % p) for e, c in f.items() if c % p), key=lambda t: key(t[0]), reverse=True)))


def _clean(f: Mapping[Exp, int], p: int) -> Poly:
    return {tuple(e): c % p for e, c in f.items() if c % p}


def _lead(f: Poly, key) -> Exp:
    return max(f, key=key)


def _monic(f: Poly, key, p: int) -> Poly:
    c = pow(f[_lead(f, key)], p - 2, p)
    return {e: a * c % p for e, a in f.items()}


def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _sub_mult(f: Poly, c: int, shift: Exp, g: Poly, p: int) -> Poly:
    out = dict(f)
    for e, a in g.items():
        u = tuple(x + y for x, y in zip(e, shift))
        v = (out.get(u, 0) - c * a) % p
        if v:
            out[u] = v
        else:
            out.pop(u, None)
    return out


def reduce_full(f: Poly, G: Sequence[Poly], key, p: int) -> Poly:
    f = dict(f)
    rem: Poly = {}
    leads = [(_lead(g, key), g) for g in G if g]
    while f:
        m = _lead(f, key)
        c = f[m]
        for lm, g in leads:
            if _divides(lm, m):
                shift = tuple(x - y for x, y in zip(m, lm))
                f = _sub_mult(f, c * pow(g[lm], p - 2, p) % p, shift, g, p)
                break
        else:
            rem[m] = c
            del f[m]
    return rem


def _spoly(f: Poly, g: Poly, key, p: int) -> Poly:
    a, b = _lead(f, key), _lead(g, key)
    l = tuple(max(x, y) for x, y in zip(a, b))
    sf = {tuple(x + y - z for x, y, z in zip(e, l, a)): c * pow(f[a], p - 2, p) % p for e, c in f.items()}
    return _sub_mult(sf, pow(g[b], p - 2, p), tuple(x - y for x, y in zip(l, b)), g, p)


def buchberger(F: Sequence[Mapping[Exp, int]], ordering="grevlex", p: int = 65521) -> list[Poly]:
    """Reduced Groebner basis by S-pair completion (normal selection strategy)."""
    key = ordering_key(ordering)
    G = [_clean(f, p) for f in F]
    G = [g for g in G if g]
    pairs = [(i, j) for i in range(len(G)) for j in range(i)]

    def lcm_of(pair):
        a, b = _lead(G[pair[0]], key), _lead(G[pair[1]], key)
        l = tuple(max(x, y) for x, y in zip(a, b))
        return (sum(l), key(l))

    while pairs:
        pairs.sort(key=lcm_of)
        i, j = pairs.pop(0)
        a, b = _lead(G[i], key), _lead(G[j], key)
        if all(x == 0 or y == 0 for x, y in zip(a, b)):
            continue  # coprime leading monomials
        h = reduce_full(_spoly(G[i], G[j], key, p), G, key, p)
        if h:
            G.append(h)
            pairs.extend((len(G) - 1, k) for k in range(len(G) - 1))
    # minimalise and interreduce
    G = [_monic(g, key, p) for g in G]
    G.sort(key=lambda g: key(_lead(g, key)))
    minimal: list[Poly] = []
    for g in G:
        if not any(_divides(_lead(h, key), _lead(g, key)) for h in minimal):
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        out.append(_monic(reduce_full(g, others, key, p), key, p))
    return out


# --- Macaulay-rank membership ---------------------------------------------------

def level_sets(gens: Sequence[Exp], d: int) -> list[set[Exp]]:
    """Exponent sets of degrees ``0..d`` of the homogenised semigroup, by plain sumsets."""
    n = len(gens[0])
    levels = [{(0,) * n}]
    for _ in range(d):
        levels.append({tuple(a + b for a, b in zip(x, g)) for x in levels[-1] for g in gens})
    return levels


def rank_naive(M: np.ndarray, p: int) -> int:
    A = np.array(M, dtype=np.int64) % p
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        A[[r, k]] = A[[k, r]]
        A[r] = A[r] * pow(int(A[r, c]), p - 2, p) % p
        below = A[r + 1:, c].copy()
        A[r + 1:] = (A[r + 1:] - np.outer(below, A[r])) % p
        r += 1
    return r


def macaulay_rows(F: Sequence[tuple[Mapping[Exp, int], int]], d: int, gens: Sequence[Exp]) -> tuple[list[Poly], list[Exp]]:
    """Rows ``m * f`` (as dicts) for homogeneous ``(f, deg f)`` and all degree ``d - deg f`` multipliers."""
    levels = level_sets(gens, d)
    rows = []
    for f, k in F:
        if k > d:
            continue
        for m in sorted(levels[d - k]):
            rows.append({tuple(a + b for a, b in zip(e, m)): c for e, c in f.items()})
    return rows, sorted(levels[d])


def _matrix(rows: Sequence[Poly], cols: Sequence[Exp]) -> np.ndarray:
    idx = {c: i for i, c in enumerate(cols)}
    M = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for r, f in enumerate(rows):
        for e, c in f.items():
            M[r, idx[e]] = c
    return M


def macaulay_rank(F: Sequence[tuple[Mapping[Exp, int], int]], d: int, gens: Sequence[Exp], p: int) -> int:
    rows, cols = macaulay_rows(F, d, gens)
    return rank_naive(_matrix(rows, cols), p) if rows else 0


@dataclass
class Membership:
    member: bool
    rank: int
    rank_with_f: int

    def __bool__(self) -> bool:
        return self.member


def membership_rank(f: Mapping[Exp, int], F: Sequence[tuple[Mapping[Exp, int], int]], d: int,
                    gens: Sequence[Exp], p: int = 65521) -> Membership:
    """Whether degree-``d`` homogeneous ``f`` lies in the degree-``d`` span of ``F``."""
    rows, cols = macaulay_rows(F, d, gens)
    r0 = rank_naive(_matrix(rows, cols), p) if rows else 0
    r1 = rank_naive(_matrix(rows + [dict(f)], cols), p)
    return Membership(r0 == r1, r0, r1)


def all_monomials(n: int, deg: int) -> list[Exp]:
    return [e for e in itertools.product(range(deg + 1), repeat=n) if sum(e) <= deg]

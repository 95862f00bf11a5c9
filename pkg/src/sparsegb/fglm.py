"""Change of ordering from a sparse Groebner basis to a lex basis in ``k[H_1..H_r]``.

``H_i`` maps to ``X^{p_i}`` for the Hilbert basis ``p_1 > ... > p_r``
(decreasing under the affine order), so ``H_r`` is the smallest
variable of the lexicographic order and plays the role of ``T`` in the
univariate parametrisation.
"""

from __future__ import annotations

import heapq
import itertools
import logging
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from sympy.ntheory.residue_ntheory import nthroot_mod

from .ffield import inv, roots, upoly_eval, upoly_trim
from .lattice import integer_solve, lattice_index
from .poly import SparsePolynomial, normal_form
from .semigroup import Exp, GeneratorSet, MonomialLadder, MonomialOrder

log = logging.getLogger(__name__)

DEFAULT_CAP = 20000
CANDIDATE_CAP = 1 << 20


class NotZeroDimensional(RuntimeError):
    pass


class ShapeError(RuntimeError):
    pass


class RecoveryError(RuntimeError):
    pass


@dataclass
class Staircase:
    monomials: list[Exp]
    index: dict[Exp, int] = field(repr=False, default_factory=dict)

    def __post_init__(self):
        self.index = {m: i for i, m in enumerate(self.monomials)}

    @property
    def delta(self) -> int:
        return len(self.monomials)

    def coordinates(self, f: SparsePolynomial) -> list[int]:
        """Coordinates of a normal form in the staircase basis."""
        v = [0] * self.delta
        for e, c in f.terms:
            v[self.index[e]] = c
        return v


def _divisible(s: Exp, lms: Sequence[Exp], gens: GeneratorSet) -> bool:
    return any(gens.contains(tuple(a - b for a, b in zip(s, t))) for t in lms)


def staircase(basis: Sequence[SparsePolynomial], ladder: MonomialLadder, cap: int = DEFAULT_CAP) -> Staircase:
    """Standard monomials of ``k[S_M]`` modulo the leading monomials of ``basis``.

    Levels are scanned by increasing degree; the scan stops at the first
    level contributing nothing beyond the largest basis degree.
    """
    gens = ladder.gens
    lms = [g.lm for g in basis if g]
    maxdeg = max((gens.degree_of(t) or 0 for t in lms), default=0)
    found: list[Exp] = []
    d = 0
    while True:
        lower = ladder.index(d - 1) if d else {}
        new = 0
        for row in ladder.level(d).tolist():
            s = tuple(row)
            if s in lower or _divisible(s, lms, gens):
                continue
            found.append(s)
            new += 1
            if len(found) > cap:
                raise NotZeroDimensional(f"staircase exceeds {cap} monomials")
        if new == 0 and d > maxdeg:
            break
        d += 1
    order = ladder.order
    found.sort(key=order.key)
    return Staircase(found)


def mul_matrices(basis: Sequence[SparsePolynomial], stairs: Staircase, hilbert: Sequence[Exp],
                 gens: GeneratorSet, order: MonomialOrder, p: int) -> list[list[list[int]]]:
    """Matrix of multiplication by ``X^{p_i}`` on the quotient, one per Hilbert-basis element.

    Column ``b`` holds the staircase coordinates of ``NF(X^{p_i} b)``.
    """
    mats = []
    for h in hilbert:
        T = [[0] * stairs.delta for _ in range(stairs.delta)]
        for j, b in enumerate(stairs.monomials):
            mono = SparsePolynomial(((tuple(x + y for x, y in zip(h, b)), 1),), order, p)
            col = stairs.coordinates(normal_form(mono, basis, gens))
            for i, c in enumerate(col):
                T[i][j] = c
        mats.append(T)
    return mats


def _matvec(T: Sequence[Sequence[int]], v: Sequence[int], p: int) -> list[int]:
    return [sum(a * b for a, b in zip(row, v)) % p for row in T]


def sparse_fglm(matrices: Sequence[Sequence[Sequence[int]]], one: Sequence[int], p: int) -> list[SparsePolynomial]:
    """Reduced lex Groebner basis of the kernel of ``H_i -> X^{p_i}`` modulo the ideal.

    ``matrices[i]`` multiplies by ``phi(H_i)`` and ``one`` holds the
    coordinates of ``NF(1)``.  Monomials of ``k[H]`` are visited in
    increasing lex order; each normal form is one matrix-vector product
    away from that of its parent in the new staircase.
    """
    r = len(matrices)
    lex = MonomialOrder(tuple(tuple(int(i == j) for j in range(r)) for i in range(r)))
    zero = (0,) * r
    E: list[Exp] = []
    vecs: dict[Exp, list[int]] = {}
    basis_rows: list[tuple[int, list[int], list[int]]] = []  # (pivot, reduced vector, combination over E)
    G: list[SparsePolynomial] = []
    lms: list[Exp] = []
    heap: list[tuple[Exp, Exp | None, int]] = [(zero, None, -1)]
    queued = {zero}

    def top_reducible(m: Exp) -> bool:
        return any(all(a >= b for a, b in zip(m, t)) for t in lms)

    while heap:
        m, parent, j = heapq.heappop(heap)
        if top_reducible(m):
            continue
        v = list(one) if parent is None else _matvec(matrices[j], vecs[parent], p)
        w = list(v)
        lam = [0] * len(E)
        for piv, row, combo in basis_rows:
            c = w[piv]
            if c:
                w = [(a - c * b) % p for a, b in zip(w, row)]
                for k, x in enumerate(combo):
                    lam[k] = (lam[k] + c * x) % p
        nz = next((k for k, a in enumerate(w) if a), None)
        if nz is None:
            terms = {m: 1}
            for k, x in enumerate(lam):
                if x:
                    terms[E[k]] = (terms.get(E[k], 0) - x) % p
            G.append(SparsePolynomial.from_terms(terms, lex, p))
            lms.append(m)
            continue
        # new standard monomial: w = v - sum lam_k V_k, scaled to a unit pivot
        s = inv(w[nz], p)
        combo = [(-x * s) % p for x in lam] + [s]
        for _, _, c in basis_rows:
            c.append(0)
        basis_rows.append((nz, [a * s % p for a in w], combo))
        E.append(m)
        vecs[m] = v
        for i in range(r):
            nxt = tuple(a + (k == i) for k, a in enumerate(m))
            if nxt not in queued and not top_reducible(nxt):
                queued.add(nxt)
                heapq.heappush(heap, (nxt, m, i))
    return sorted(G, key=lambda g: g.lm)


@dataclass
class RationalParametrization:
    Q: tuple[int, ...]
    numerators: list[tuple[int, ...]]
    denominators: list[tuple[int, ...]]
    p: int

    def values(self, t: int) -> list[int] | None:
        out = []
        for num, den in zip(self.numerators, self.denominators):
            dv = upoly_eval(den, t, self.p)
            if dv == 0:
                return None
            out.append(upoly_eval(num, t, self.p) * inv(dv, self.p) % self.p)
        return out


def parametrize(lex_gb: Sequence[SparsePolynomial], r: int, p: int) -> RationalParametrization:
    """Read ``Q(T)`` and ``H_i = Q_i(T)`` off a lex basis in shape position (``T = H_r``)."""
    last = r - 1
    Q = None
    num: list[tuple[int, ...] | None] = [None] * r
    for g in lex_gb:
        lm = g.lm
        if all(a == 0 for a in lm[:last]):
            if Q is not None:
                raise ShapeError("more than one univariate element")
            coeffs = [0] * (lm[last] + 1)
            for e, c in g.terms:
                coeffs[e[last]] = c
            Q = upoly_trim(coeffs, p)
            continue
        i = next(k for k, a in enumerate(lm) if a)
        if lm[i] != 1 or any(lm[k] for k in range(i + 1, r)) or num[i] is not None:
            raise ShapeError(f"leading monomial {lm} is not a lone variable H_{i + 1}")
        tail = [0]
        for e, c in g.terms[1:]:
            if any(e[k] for k in range(last)):
                raise ShapeError(f"tail of H_{i + 1} element involves other variables")
            tail += [0] * (e[last] + 1 - len(tail))
            tail[e[last]] = (-c) % p
        num[i] = upoly_trim(tail, p)
    if Q is None:
        raise ShapeError("no univariate polynomial in the lex basis")
    num[last] = (0, 1)
    missing = [k + 1 for k in range(last) if num[k] is None]
    if missing:
        raise ShapeError(f"no linear element for H_{missing}")
    return RationalParametrization(Q, num, [(1,)] * r, p)


@dataclass
class Recovery:
    solutions: list[tuple[int, ...]]
    root_multiplicities: dict[int, int]
    diagnostics: list[str]


def _eval_laurent(f: Mapping[Exp, int], x: Sequence[int], p: int) -> int:
    total = 0
    for e, c in f.items():
        v = c
        for xi, ei in zip(x, e):
            v = v * pow(xi, ei, p) % p
        total += v
    return total % p


def _monomial_value(v: Sequence[int], a: Sequence[int], p: int) -> int:
    out = 1
    for vi, ai in zip(v, a):
        out = out * pow(vi, ai, p) % p
    return out


def recover_solutions(param: RationalParametrization, hilbert: Sequence[Exp],
                      system: Sequence[Mapping[Exp, int]]) -> Recovery:
    """Torus solutions from the parametrisation by inverting ``x -> (x^{p_i})``.

    Coordinates whose unit vector lies in the Hilbert-basis lattice are
    read off directly; the others are taken among the ``c``-th roots of
    ``x_j^c`` (``c`` the lattice index) and every candidate point is
    checked against the monomial values and the input system.
    """
    p = param.p
    n = len(hilbert[0])
    A = [[h[i] for h in hilbert] for i in range(n)]
    c = lattice_index(A)
    if c == 0:
        raise RecoveryError("Hilbert basis does not span a full-rank lattice")
    direct = [integer_solve(A, [int(i == j) for i in range(n)]) for j in range(n)]
    scaled = [None if a is not None else integer_solve(A, [c * int(i == j) for i in range(n)]) for j, a in enumerate(direct)]
    diags: list[str] = []
    mults: dict[int, int] = {}
    sols: set[tuple[int, ...]] = set()
    tried = 0
    for tau, mult in roots(param.Q, p):
        mults[tau] = mult
        v = param.values(tau)
        if v is None or any(x == 0 for x in v):
            diags.append(f"root {tau}: parametrisation leaves the torus")
            continue
        tried += 1
        choices = []
        for j in range(n):
            if direct[j] is not None:
                choices.append([_monomial_value(v, direct[j], p)])
            else:
                w = _monomial_value(v, scaled[j], p)
                choices.append(sorted(nthroot_mod(w, c, p, all_roots=True) or []))
        total = 1
        for ch in choices:
            total *= len(ch)
        if total > CANDIDATE_CAP:
            raise RecoveryError(f"{total} candidate points exceed the enumeration cap")
        found = 0
        for x in itertools.product(*choices):
            if all(_monomial_value(x, h, p) == vi for h, vi in zip(hilbert, v)) and \
                    all(_eval_laurent(f, x, p) == 0 for f in system):
                sols.add(tuple(x))
                found += 1
        if not found:
            diags.append(f"root {tau}: no candidate point satisfies the system")
    if tried and not sols:
        raise RecoveryError("no candidate survived verification: " + "; ".join(diags))
    return Recovery(sorted(sols), mults, diags)

"""Macaulay matrices, the sparse MatrixF5 algorithm and witness-degree budgets."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import ceil
from typing import Sequence

import numpy as np

from .ffield import EchelonBasis
from .lattice import EhrhartData
from .poly import SparsePolynomial, dehomogenize, degree_in, interreduce
from .semigroup import Exp, MonomialLadder, MonomialOrder

log = logging.getLogger(__name__)

SERIES_LIMIT = 500


@dataclass(frozen=True)
class DegreeBudget:
    D: int
    source: str  # regular | dense | multihom | semiregular | user

    def __post_init__(self):
        if self.D < 1:
            raise ValueError("degree budget must be positive")


def budget_regular(P: EhrhartData | None, degrees: Sequence[int], source: str = "regular") -> DegreeBudget:
    """``reg(k[P]) + 1 + sum(d_j - 1)``; without Ehrhart data ``reg <= n`` is used."""
    reg = P.regularity if P is not None else len(degrees)
    return DegreeBudget(reg + 1 + sum(d - 1 for d in degrees), source)


def budget_dense(degrees: Sequence[int]) -> DegreeBudget:
    return DegreeBudget(1 + sum(d - 1 for d in degrees), "dense")


def budget_multihom(blocks: Sequence[int], degrees: Sequence[int]) -> DegreeBudget:
    """``n + 2 - max ceil((n_i + 1) / d_i)`` for a product of scaled simplices."""
    if len(blocks) != len(degrees) or any(d < 1 for d in degrees):
        raise ValueError("one positive degree per block is required")
    n = sum(blocks)
    return DegreeBudget(n + 2 - max(ceil((b + 1) / d) for b, d in zip(blocks, degrees)), "multihom")


def series_product(hf: Sequence[int], degrees: Sequence[int], nterms: int) -> list[int]:
    """First ``nterms`` coefficients of ``(sum hf[d] t^d) * prod(1 - t^{d_i})``."""
    coeffs = list(hf[:nterms]) + [0] * max(0, nterms - len(hf))
    for di in degrees:
        for k in range(nterms - 1, di - 1, -1):
            coeffs[k] -= coeffs[k - di]
    return coeffs


def budget_semiregular(P: EhrhartData | Sequence[int] | MonomialLadder, degrees: Sequence[int]) -> DegreeBudget:
    """Index of the first nonpositive coefficient of ``HS(t) * prod(1 - t^{d_i})``.

    ``P`` is Ehrhart data, a list of Hilbert-function values, or a ladder
    whose level sizes are used as the Hilbert function.
    """
    for d in range(1, SERIES_LIMIT):
        if isinstance(P, EhrhartData):
            hf = [int(P.hp(k)) for k in range(d + 1)]
        elif isinstance(P, MonomialLadder):
            hf = [P.size(k) for k in range(d + 1)]
        else:
            hf = list(P)
        if len(hf) <= d:
            raise ValueError("Hilbert function too short to locate the truncation index")
        if series_product(hf, degrees, d + 1)[d] <= 0:
            return DegreeBudget(max(d, max(degrees)), "semiregular")
    raise ValueError("series has no nonpositive coefficient within the search limit")


@dataclass
class MacaulayBlock:
    matrix: np.ndarray
    signatures: list[tuple[int, Exp]]
    columns: np.ndarray
    degree: int


def _term_arrays(f: SparsePolynomial) -> tuple[np.ndarray, np.ndarray]:
    T = np.array([e for e, _ in f.terms], dtype=np.int64).reshape(len(f.terms), -1)
    C = np.array([c for _, c in f.terms], dtype=np.float64)
    return T, C


def _product_rows(f: SparsePolynomial, mults: np.ndarray, d: int, ladder: MonomialLadder) -> np.ndarray:
    T, C = _term_arrays(f)
    k, nt = len(mults), len(T)
    R = np.zeros((k, ladder.size(d)))
    if k == 0:
        return R
    S = (mults[:, None, :] + T[None, :, :]).reshape(k * nt, -1)
    cols = ladder.positions(d, S)
    R[np.repeat(np.arange(k), nt), cols] = np.tile(C, k)
    return R


def macaulay(F: Sequence[SparsePolynomial], d: int, ladder: MonomialLadder) -> MacaulayBlock:
    """Full degree-``d`` Macaulay matrix; rows ``(i, multiplier)`` with multipliers decreasing."""
    blocks, sigs = [], []
    for i, f in enumerate(F):
        e = d - f.degree
        if e < 0:
            continue
        mults = ladder.level(e)
        blocks.append(_product_rows(f, mults, d, ladder))
        sigs.extend((i, tuple(int(x) for x in m)) for m in mults)
    ncols = ladder.size(d)
    M = np.vstack(blocks) if blocks else np.zeros((0, ncols))
    return MacaulayBlock(M, sigs, ladder.level(d), d)


@dataclass
class SparseGB:
    basis: list[SparsePolynomial]
    order: MonomialOrder
    budget: DegreeBudget
    regularity_violation: bool
    witness_degree: int
    max_basis_degree: int
    homogeneous_basis: list[SparsePolynomial] = field(repr=False, default_factory=list)
    ranks: dict[int, int] = field(default_factory=dict)
    columns: dict[int, int] = field(default_factory=dict)
    leading: dict[int, set[Exp]] = field(repr=False, default_factory=dict)
    stats: list[dict] = field(repr=False, default_factory=list)


def _row_poly(row: np.ndarray, cols: np.ndarray, d: int, order: MonomialOrder, p: int) -> SparsePolynomial:
    nz = np.flatnonzero(row)
    terms = tuple((tuple(int(x) for x in cols[j]), int(row[j])) for j in nz)
    return SparsePolynomial(terms, order, p, d)


def sparse_matrix_f5(F: Sequence[SparsePolynomial], budget: DegreeBudget, ladder: MonomialLadder,
                     order: MonomialOrder | None = None) -> SparseGB:
    """D-sparse Groebner basis of homogeneous ``F`` in ``k[S_M^(h)]``, dehomogenised.

    For every degree ``d`` and input ``f_i`` the rows ``X^(s, d-d_i) f_i``
    are added unless ``X^(s, d-d_i)`` is a leading monomial of the
    echelon form built from ``f_1 .. f_{i-1}`` in degree ``d - d_i``.
    A row reducing to zero marks the input as non-regular.
    """
    if not F:
        raise ValueError("empty system")
    order = (order or ladder.order).as_affine()
    if order != ladder.order:
        raise ValueError("ladder was sorted under a different ordering")
    p = F[0].p
    degs = [f.degree for f in F]
    if any(d is None for d in degs):
        raise ValueError("inputs must be homogeneous")
    if min(degs) < 1:
        raise ValueError("constant inputs generate the unit ideal")
    D = budget.D
    if D < max(degs):
        raise ValueError(f"degree budget {D} below the largest input degree {max(degs)}")
    ladder.extend(D)
    gens = ladder.gens
    G = np.array(gens.gens, dtype=np.int64)

    intro: dict[int, np.ndarray] = {}
    ranks, columns, leading = {}, {}, {}
    stats: list[dict] = []
    basis_h: list[SparsePolynomial] = []
    violation = False
    first_seen: dict[Exp, int] = {}
    prev_lms = np.zeros((0, gens.dim), dtype=np.int64)

    for d in range(1, D + 1):
        cols = ladder.level(d)
        ech = EchelonBasis(len(cols), p)
        owner = np.full(len(cols), -1, dtype=np.int64)
        rows_before = rows_after = zero_rows = 0
        for i, f in enumerate(F):
            e = d - degs[i]
            if e < 0:
                continue
            mults = ladder.level(e)
            keep = np.ones(len(mults), dtype=bool)
            if e in intro:
                prior = intro[e]
                keep = ~((prior >= 0) & (prior < i))
            R = _product_rows(f, mults[keep], d, ladder)
            newp, zero = ech.add(R)
            owner[newp] = i
            rows_before += len(mults)
            rows_after += int(keep.sum())
            zero_rows += len(zero)
        if zero_rows:
            violation = True
        intro[d] = owner
        ranks[d] = ech.rank
        columns[d] = len(cols)

        piv = np.array(ech.pivots, dtype=np.int64)
        lm_exps = cols[piv] if len(piv) else np.zeros((0, gens.dim), dtype=np.int64)
        leading[d] = {tuple(int(x) for x in r) for r in lm_exps}
        for s in leading[d]:
            first_seen.setdefault(s, d)
        # monomials in <LM(G_{<d})> of degree d are exactly LM(I_{d-1}) + generators
        covered: set = set()
        if len(prev_lms):
            cand = np.unique((prev_lms[:, None, :] + G[None, :, :]).reshape(-1, gens.dim), axis=0)
            covered = {tuple(r) for r in cand.tolist()}
        new = 0
        for r, c in enumerate(ech.pivots):
            s = tuple(int(x) for x in cols[c])
            if s not in covered:
                basis_h.append(_row_poly(ech.rows[r], cols, d, order, p))
                new += 1
        prev_lms = lm_exps
        stats.append({"degree": d, "columns": len(cols), "rows_before": rows_before,
                      "rows_after": rows_after, "rank": ech.rank, "zero_rows": zero_rows,
                      "new_basis": new})
        log.debug("degree %d: %s", d, stats[-1])

    if violation and len(F) <= gens.dim:
        log.warning("rows reduced to zero: input is not a regular sequence, D=%d may be insufficient", D)
    affine = interreduce([dehomogenize(h) for h in basis_h], gens)
    max_deg = max((degree_in(g, gens) for g in affine), default=0)
    wit = max((first_seen.get(g.lm, D) for g in affine), default=0)
    return SparseGB(affine, order, budget, violation, wit, max_deg, basis_h, ranks, columns, leading, stats)

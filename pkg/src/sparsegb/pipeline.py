"""Solving pipeline: support -> homogenise -> sparse F5 -> staircase -> FGLM -> roots."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Sequence

from . import f5, fglm
from .lattice import PolytopeSpec, ehrhart_data, product_volume, simplex
from .poly import SparsePolynomial, homogenize, normal_form, translate_support
from .semigroup import Exp, GeneratorSet, MonomialLadder, MonomialOrder, default_order, hilbert_basis
from .system import SystemFile

log = logging.getLogger(__name__)

STAGES = ("support", "homogenize", "budget", "f5", "staircase", "fglm", "parametrize", "recover")


class PipelineError(RuntimeError):
    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"[{stage}] {type(cause).__name__}: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass
class Prepared:
    system: SystemFile
    gens: GeneratorSet
    order: MonomialOrder
    ladder: MonomialLadder
    polys: list[dict[Exp, int]]          # translated, in k[S_M]
    homogeneous: list[SparsePolynomial]
    polytope: PolytopeSpec | None
    shift: Exp


@dataclass
class SolveResult:
    prepared: Prepared
    gb: f5.SparseGB | None = None
    stairs: fglm.Staircase | None = None
    hilbert: list[Exp] = field(default_factory=list)
    lex_basis: list[SparsePolynomial] = field(default_factory=list)
    parametrization: fglm.RationalParametrization | None = None
    recovery: fglm.Recovery | None = None
    diagnostics: list[str] = field(default_factory=list)
    times: dict[str, float] = field(default_factory=dict)

    @property
    def solutions(self) -> list[tuple[int, ...]]:
        return self.recovery.solutions if self.recovery else []

    @property
    def delta(self) -> int | None:
        return self.stairs.delta if self.stairs else None


class _Stage:
    def __init__(self, name: str, times: dict):
        self.name, self.times = name, times

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, et, ev, tb):
        self.times[self.name] = self.times.get(self.name, 0.0) + time.perf_counter() - self.t0
        if ev is not None and not isinstance(ev, PipelineError):
            raise PipelineError(self.name, ev) from ev
        return False


def prepare(system: SystemFile, times: dict | None = None) -> Prepared:
    times = {} if times is None else times
    p = system.prime
    with _Stage("support", times):
        pts = system.generator_points()
        if pts is None:
            gens, polys, shift = translate_support(system.polys)
        else:
            gens, polys, shift = GeneratorSet(pts), [dict(f) for f in system.polys], (0,) * system.dim
            if gens.rank() < system.dim:
                raise ValueError("generators do not span a full-rank lattice")
        order = MonomialOrder(tuple(map(tuple, system.order_weights))) if system.order_weights else default_order(gens)
        ladder = MonomialLadder(gens, order)
    with _Stage("homogenize", times):
        H = [homogenize(SparsePolynomial.from_terms(f, order, p), gens) for f in polys]
        if any(not h for h in H):
            raise ValueError("zero polynomial in the input")
    P = system.polytope()
    if P is None and set(gens.gens) == simplex(gens.dim).points:
        P = simplex(gens.dim)  # classical dense support
    return Prepared(system, gens, ladder.order, ladder, polys, H, P, shift)


def choose_budget(prep: Prepared, max_degree: int | None = None) -> f5.DegreeBudget:
    """User override, else multihomogeneous / regular for square systems, semiregular otherwise."""
    if max_degree is not None:
        return f5.DegreeBudget(max_degree, "user")
    degrees = [h.degree for h in prep.homogeneous]
    n, m = prep.system.dim, len(degrees)
    P = prep.polytope
    if m > n:
        return f5.budget_semiregular(prep.ladder, degrees)
    if P is not None and P.blocks and len(P.blocks) > 1 and all(d == 1 for d in degrees):
        return f5.budget_multihom([b for b, _ in P.blocks], [d for _, d in P.blocks])
    ehr = ehrhart_data(P) if P is not None and P.normal_declared else None
    return f5.budget_regular(ehr, degrees)


def compute_gb(prep: Prepared, budget: f5.DegreeBudget, times: dict) -> f5.SparseGB:
    with _Stage("f5", times):
        return f5.sparse_matrix_f5(prep.homogeneous, budget, prep.ladder)


def solve(system: SystemFile, max_degree: int | None = None, cap: int | None = None) -> SolveResult:
    times: dict[str, float] = {}
    prep = prepare(system, times)
    res = SolveResult(prep, times=times)
    with _Stage("budget", times):
        budget = choose_budget(prep, max_degree if max_degree is not None else system.max_degree)
    res.gb = compute_gb(prep, budget, times)
    if res.gb.regularity_violation and len(system.polys) <= system.dim:
        res.diagnostics.append("rows reduced to zero below the budget degree (non-regular input)")
    p, order, gens = system.prime, prep.order, prep.gens
    cap = cap or system.cap_dimension or fglm.DEFAULT_CAP
    with _Stage("staircase", times):
        res.stairs = fglm.staircase(res.gb.basis, prep.ladder, cap)
    with _Stage("fglm", times):
        res.hilbert = sorted(hilbert_basis(gens), key=order.key, reverse=True)
        T = fglm.mul_matrices(res.gb.basis, res.stairs, res.hilbert, gens, order, p)
        one = SparsePolynomial((((0,) * gens.dim, 1),), order, p)
        res.lex_basis = fglm.sparse_fglm(T, res.stairs.coordinates(normal_form(one, res.gb.basis, gens)), p)
    try:
        with _Stage("parametrize", times):
            res.parametrization = fglm.parametrize(res.lex_basis, len(res.hilbert), p)
    except PipelineError as exc:
        if isinstance(exc.cause, fglm.ShapeError):
            res.diagnostics.append(f"shape position: {exc.cause}")
            return res
        raise
    with _Stage("recover", times):
        res.recovery = fglm.recover_solutions(res.parametrization, res.hilbert, prep.polys)
    res.diagnostics += res.recovery.diagnostics
    return res


# --- reports -------------------------------------------------------------------

def gb_report(gb: f5.SparseGB) -> dict:
    return {
        "budget": {"D": gb.budget.D, "source": gb.budget.source},
        "regularity_violation": gb.regularity_violation,
        "witness_degree": gb.witness_degree,
        "max_basis_degree": gb.max_basis_degree,
        "basis_size": len(gb.basis),
        "degrees": gb.stats,
    }


def solve_report(res: SolveResult) -> dict:
    sysf = res.prepared.system
    out = {"prime": sysf.prime, "dim": sysf.dim, "equations": len(sysf.polys),
           "seed": sysf.meta.get("seed"), "rng": sysf.meta.get("rng"),
           "delta": res.delta, "hilbert_basis": [list(h) for h in res.hilbert],
           "solutions": [list(s) for s in res.solutions], "diagnostics": list(res.diagnostics),
           "times": dict(res.times)}
    if res.gb is not None:
        out.update(gb_report(res.gb))
    if res.parametrization is not None:
        out["Q"] = list(res.parametrization.Q)
        out["Q_i"] = [list(q) for q in res.parametrization.numerators]
    if sysf.plant is not None:
        out["plant_recovered"] = tuple(sysf.plant) in set(res.solutions)
    return out


def dense_system(system: SystemFile) -> SystemFile:
    """The same polynomials with the ambient simplex support (affine dense setting)."""
    gens, polys, _ = translate_support(system.polys)
    lo = [min(e[k] for f in polys for e in f) for k in range(system.dim)]
    if any(x < 0 for x in lo):
        raise ValueError("support has no classical dense embedding without a change of coordinates")
    n = system.dim
    return SystemFile(prime=system.prime, dim=n, polys=polys, support="family", blocks=[(n, 1)],
                      cap_dimension=system.cap_dimension, meta=dict(system.meta))


def _capped_gb(prep: Prepared, D: int, cap: int | None, times: dict) -> tuple[dict, bool]:
    """Run F5 degree by degree until ``D`` or until the column count exceeds ``cap``."""
    degrees = [h.degree for h in prep.homogeneous]
    top = D
    if cap is not None:
        top = max(max(degrees), 1)
        while top < D and prep.ladder.size(top + 1) <= cap:
            top += 1
    truncated = top < D
    gb = compute_gb(prep, f5.DegreeBudget(top, "capped" if truncated else "full"), times)
    return {"D": D, "reached": top, "truncated": truncated, "degrees": gb.stats,
            "columns_at": {d: prep.ladder.size(d) for d in range(1, D + 1)},
            "time": times["f5"]}, truncated


def bench(system: SystemFile, max_degree: int | None = None, cap: int | None = None) -> dict:
    """Sparse run on S_M against the dense run on the ambient simplex.

    The dense run stops once a block would exceed ``cap`` columns; its
    time is then a lower bound and so is the reported speedup.
    """
    t_sparse: dict[str, float] = {}
    sp_prep = prepare(system, t_sparse)
    sp_budget = choose_budget(sp_prep, max_degree if max_degree is not None else system.max_degree)
    sp_gb = compute_gb(sp_prep, sp_budget, t_sparse)
    dense = dense_system(system)
    t_dense: dict[str, float] = {}
    dn_prep = prepare(dense, t_dense)
    dn_budget = choose_budget(dn_prep)
    dn_info, truncated = _capped_gb(dn_prep, dn_budget.D, cap, t_dense)
    # the sparse degree-d block holds products of total degree up to scale * d
    scale = max(h.degree for h in dn_prep.homogeneous) // max(h.degree for h in sp_prep.homogeneous)
    D = sp_budget.D
    report = {
        "seed": system.meta.get("seed"), "family": system.meta.get("family"),
        "sparse": {"D": D, "source": sp_budget.source, "degrees": sp_gb.stats, "time": t_sparse["f5"],
                   "columns_at_D": sp_prep.ladder.size(D), "witness_degree": sp_gb.witness_degree,
                   "regularity_violation": sp_gb.regularity_violation},
        "dense": {**dn_info, "source": dn_budget.source,
                  "corresponding_degree": scale * D,
                  "columns_at_corresponding_degree": dn_prep.ladder.size(scale * D)},
        "speedup": t_dense["f5"] / t_sparse["f5"] if t_sparse["f5"] > 0 else float("inf"),
        "speedup_is_lower_bound": truncated,
    }
    return report


def polytope_info(P: PolytopeSpec, degree_vectors: Sequence[Sequence[int]] = ()) -> dict:
    ehr = ehrhart_data(P)
    out = {"dim": P.dim, "points": len(P.points),
           "hp": [int(ehr.hp(d)) for d in range(P.dim + 3)],
           "ehrhart_coeffs": [str(c) for c in ehr.ehrhart_coeffs],
           "Q": list(ehr.numerator), "regularity": ehr.regularity, "volume": ehr.volume, "budgets": []}
    if P.blocks:
        out["blocks"] = [list(b) for b in P.blocks]
        out["product_volume"] = product_volume(P.blocks)
    for degs in degree_vectors:
        b = {"degrees": list(degs), "regular": f5.budget_regular(ehr, degs).D, "dense": f5.budget_dense(degs).D}
        if P.blocks and all(d == 1 for d in degs):
            b["multihom"] = f5.budget_multihom([n for n, _ in P.blocks], [d for _, d in P.blocks]).D
        if len(degs) > P.dim:
            b["semiregular"] = f5.budget_semiregular(ehr, degs).D
        out["budgets"].append(b)
    return out

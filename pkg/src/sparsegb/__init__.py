"""Sparse Groebner bases in semigroup algebras over prime fields."""

from .f5 import DegreeBudget, SparseGB, budget_dense, budget_multihom, budget_regular, budget_semiregular, sparse_matrix_f5
from .ffield import DEFAULT_PRIME, echelonize, rank_mod, roots
from .fglm import RationalParametrization, Staircase, mul_matrices, parametrize, recover_solutions, sparse_fglm, staircase
from .lattice import PolytopeSpec, ehrhart_data, integer_solve, lattice_index, product, scaled, simplex
from .pipeline import PipelineError, bench, polytope_info, solve
from .poly import SparsePolynomial, dehomogenize, homogenize, interreduce, normal_form, translate_support
from .semigroup import GeneratorSet, MonomialLadder, MonomialOrder, default_order, hilbert_basis
from .system import SystemFile, gen_bidegree, gen_bilinear, gen_fewnomial, parse

__version__ = "0.1.0"

__all__ = [
    "bench",
    "budget_dense",
    "budget_multihom",
    "budget_regular",
    "budget_semiregular",
    "default_order",
    "DEFAULT_PRIME",
    "DegreeBudget",
    "dehomogenize",
    "echelonize",
    "ehrhart_data",
    "gen_bidegree",
    "gen_bilinear",
    "gen_fewnomial",
    "GeneratorSet",
    "hilbert_basis",
    "homogenize",
    "integer_solve",
    "interreduce",
    "lattice_index",
    "MonomialLadder",
    "MonomialOrder",
    "mul_matrices",
    "normal_form",
    "parametrize",
    "parse",
    "PipelineError",
    "polytope_info",
    "PolytopeSpec",
    "product",
    "rank_mod",
    "RationalParametrization",
    "recover_solutions",
    "roots",
    "scaled",
    "simplex",
    "solve",
    "sparse_fglm",
    "sparse_matrix_f5",
    "SparseGB",
    "SparsePolynomial",
    "Staircase",
    "staircase",
    "SystemFile",
    "translate_support",
]

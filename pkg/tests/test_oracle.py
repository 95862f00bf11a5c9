import numpy as np
import pytest

from sparsegb.f5 import DegreeBudget, sparse_matrix_f5
from sparsegb.lattice import product, simplex
from sparsegb.oracle import (
    ClassicalPoly, all_monomials, buchberger, grevlex_key, lex_key, level_sets, membership_rank,
    rank_naive, reduce_full, weight_key,
)
from sparsegb.poly import SparsePolynomial
from sparsegb.semigroup import GeneratorSet, MonomialLadder

P = 65521


def graded_nf(h, B, L, d):
    """Reduce degree-d h by homogeneous B, where X^(a,k) divides X^(s,d) iff s - a lies in L_{d-k}."""
    f = dict(h)
    key = L.order.key
    while f:
        s = max(f, key=key)
        for g in B:
            if g.degree <= d and L.contains(tuple(x - y for x, y in zip(s, g.lm)), d - g.degree):
                shift = tuple(x - y for x, y in zip(s, g.lm))
                c = f[s] * pow(g.lc, P - 2, P) % P
                for e, a in g.terms:
                    u = tuple(x + y for x, y in zip(e, shift))
                    f[u] = (f.get(u, 0) - c * a) % P
                    if not f[u]:
                        del f[u]
                break
        else:
            return f
    return f


def canon(G, key):
    return sorted(ClassicalPoly.of(g, key, P).terms for g in G)


def test_buchberger_examples():
    F = [{(2, 0): 1, (0, 0): P - 1}, {(1, 1): 1, (0, 0): P - 1}]
    G = buchberger(F, "lex", P)
    assert canon(G, lex_key) == canon([{(1, 0): 1, (0, 1): P - 1}, {(0, 2): 1, (0, 0): P - 1}], lex_key)
    assert buchberger([{(1, 0): 1}], "grevlex", P) == [{(1, 0): 1}]
    assert canon(buchberger(G, "lex", P), lex_key) == canon(G, lex_key)


def test_buchberger_reduces_generators_to_one():
    assert buchberger([{(1,): 1}, {(1,): 1, (0,): 1}], "lex", P) == [{(0,): 1}]


def test_orderings():
    assert grevlex_key((0, 2, 0)) > grevlex_key((1, 0, 1)) > grevlex_key((0, 1, 1))
    assert lex_key((1, 0, 0)) > lex_key((0, 5, 5))
    w = weight_key([(1, 1), (1, 0)])
    assert w((1, 1)) > w((0, 2)) > w((1, 0))


def test_reduce_full_remainder_has_no_divisible_terms():
    G = buchberger([{(2, 0): 1, (0, 1): 3}, {(1, 1): 1, (0, 0): 7}], "grevlex", P)
    f = {(3, 2): 5, (2, 1): 1, (0, 4): 2}
    r = reduce_full(f, G, grevlex_key, P)
    leads = [max(g, key=grevlex_key) for g in G]
    assert not any(all(a <= b for a, b in zip(lm, e)) for e in r for lm in leads)


def test_level_sets_and_rank():
    lv = level_sets([(0, 0), (1, 0), (0, 1)], 2)
    assert [len(s) for s in lv] == [1, 3, 6]
    assert rank_naive(np.array([[1, 2], [2, 4]]), P) == 1
    assert rank_naive(np.eye(3, dtype=np.int64), P) == 3
    assert len(all_monomials(3, 2)) == 10


def test_membership_examples():
    gens = simplex(2).sorted_points()
    rng = np.random.default_rng(0)
    mons = sorted(level_sets(gens, 1)[1])
    f1 = {e: int(c) for e, c in zip(mons, rng.integers(1, P, len(mons)))}
    F = [(f1, 1)]
    assert membership_rank(f1, F, 1, gens)
    combo = {}
    for m, c in ((1, 0), 4), ((0, 0), 9):
        for e, a in f1.items():
            u = tuple(x + y for x, y in zip(e, m))
            combo[u] = (combo.get(u, 0) + c * a) % P
    assert membership_rank(combo, F, 2, gens)
    out = {e: int(c) for e, c in zip(sorted(level_sets(gens, 2)[2]), rng.integers(1, P, 6))}
    res = membership_rank(out, F, 2, gens)
    assert not res and (res.rank, res.rank_with_f) == (3, 4)


@pytest.mark.parametrize("seed", range(3))
def test_membership_agrees_with_normal_form(seed):
    rng = np.random.default_rng(seed)
    pts = product(simplex(1), simplex(1)).sorted_points()
    G = GeneratorSet(pts)
    L = MonomialLadder(G)
    mons1 = [tuple(r) for r in L.level(1).tolist()]
    F = [SparsePolynomial.from_terms({e: int(c) for e, c in zip(mons1, rng.integers(1, P, 4))}, L.order, P, 1)
         for _ in range(2)]
    D = 3
    gb = sparse_matrix_f5(F, DegreeBudget(D, "user"), L)
    Fd = [(f.as_dict(), 1) for f in F]
    for d in range(1, D + 1):
        mons = [tuple(r) for r in L.level(d).tolist()]
        for trial in range(6):
            if trial % 2:
                # in the ideal: random combination of shifted generators
                h: dict = {}
                for f in F:
                    for m in [tuple(r) for r in L.level(d - 1).tolist()]:
                        c = int(rng.integers(0, P))
                        for e, a in f.shift(m, d - 1).terms:
                            h[e] = (h.get(e, 0) + c * a) % P
            else:
                h = {e: int(rng.integers(0, P)) for e in mons}
            hp = SparsePolynomial.from_terms(h, L.order, P, d)
            if not hp:
                continue
            nf = graded_nf(hp.as_dict(), gb.homogeneous_basis, L, d)
            assert bool(membership_rank(hp.as_dict(), Fd, d, pts)) == (not nf)

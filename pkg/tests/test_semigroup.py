import pytest

from sparsegb.lattice import ehrhart_data, product, simplex
from sparsegb.semigroup import (
    GeneratorSet, Monomial, MonomialLadder, MonomialOrder, SemigroupError, compare, default_order, divides,
    hilbert_basis, validate_pointed,
)

M3 = [(0, 0), (1, 1), (2, 0)]


def test_validate_pointed_examples():
    assert validate_pointed([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]) == (1, 1, 1)
    with pytest.raises(SemigroupError):
        validate_pointed([(0, 0), (1, 0), (-1, 0)])
    c = validate_pointed([(0, 0), (1, 1), (2, 0), (0, 2)])
    assert all(c[0] * a + c[1] * b > 0 for a, b in [(1, 1), (2, 0), (0, 2)])


def test_validate_pointed_mixed_signs():
    gens = [(0, 0), (1, -1), (1, 2), (-1, 3)]
    c = validate_pointed(gens)
    assert all(c[0] * a + c[1] * b > 0 for a, b in gens[1:])
    with pytest.raises(SemigroupError):
        validate_pointed([(0, 0), (1, 1), (-1, 0), (0, -1)])


def test_generator_set_requires_origin():
    with pytest.raises(SemigroupError):
        GeneratorSet([(1, 0), (0, 1)])
    with pytest.raises(SemigroupError):
        GeneratorSet([(0, 0), (1, 0)], positive_form=(0, 1))


def test_hilbert_basis_examples():
    assert hilbert_basis([(0, 0), (1, 0), (0, 1), (1, 1)]) == [(0, 1), (1, 0)]
    assert hilbert_basis([(0, 0), (2, 0), (0, 2), (1, 1)]) == [(0, 2), (1, 1), (2, 0)]
    assert hilbert_basis([(0,), (2,), (3,), (5,)]) == [(2,), (3,)]


def test_degree_and_membership():
    G = GeneratorSet([(0,), (2,), (3,)])
    assert [G.degree_of((k,)) for k in range(7)] == [0, None, 1, 1, 2, 2, 2]
    assert not G.contains((1,)) and G.contains((7,))
    H = GeneratorSet(M3)
    assert H.degree_of((1, -1)) is None
    assert H.degree_of((3, 1)) == 2


def test_ladder_examples():
    L = MonomialLadder(GeneratorSet(simplex(2).points))
    assert L.size(2) == 6
    T = MonomialLadder(GeneratorSet(M3))
    assert set(T.index(2)) == {(0, 0), (1, 1), (2, 0), (2, 2), (3, 1), (4, 0)}
    assert T.monomials(0) == [Monomial((0, 0), 0)]


def test_ladder_levels_sorted_and_witnessed():
    G = GeneratorSet(product(simplex(1), simplex(2)).points)
    L = MonomialLadder(G)
    for d in range(1, 4):
        keys = [L.order.key(tuple(r)) for r in L.level(d).tolist()]
        assert keys == sorted(keys, reverse=True)
        for m in L.monomials(d):
            parent, g = L.predecessor(m)
            assert tuple(a + b for a, b in zip(parent.exp, g)) == m.exp
            assert L.contains(parent.exp, d - 1)


@pytest.mark.parametrize("P", [simplex(3), product(simplex(1), simplex(1)), product(simplex(2), simplex(1, 2))])
def test_ladder_matches_ehrhart(P):
    L = MonomialLadder(GeneratorSet(P.points))
    E = ehrhart_data(P)
    assert [L.size(d) for d in range(6)] == [E.hp(d) for d in range(6)]


def test_divides_examples():
    L = MonomialLadder(GeneratorSet(M3))
    L.extend(3)
    # the degree-one unit divides exactly the degree-2 monomials whose exponent is already in L_1
    level1 = set(L.index(1))
    for m in L.monomials(2):
        assert divides(Monomial((0, 0), 1), m, L) == (m.exp in level1)
    assert divides(Monomial((0, 0), 1), Monomial((1, 1), 2), L)
    assert divides(Monomial((2, 0), 1), Monomial((3, 1), 2), L)
    assert not divides(Monomial((1, 1), 1), Monomial((2, 0), 2), L)
    assert not divides(Monomial((0, 0), 2), Monomial((0, 0), 1), L)


def test_compare_examples():
    G = GeneratorSet(simplex(2).points)
    aff = default_order(G)
    gr = aff.as_graded()
    assert compare(aff, (0, 0), (0, 1)) == -1
    assert compare(gr, Monomial((2, 0), 1), Monomial((0, 0), 2)) == -1
    assert compare(gr, Monomial((1, 0), 2), Monomial((1, 0), 2)) == 0
    assert compare(aff, (1, 1), (1, 1)) == 0


def test_default_order_examples():
    assert default_order(GeneratorSet(simplex(2).points)).weights == ((1, 1), (1, 0))
    assert default_order(GeneratorSet([(0,), (2,), (3,)])).weights == ((1,),)
    G = GeneratorSet([(0, 0, 0), (1, -1, 0), (0, 1, 1), (1, 0, 2)])
    W = default_order(G)
    assert W.weights[0] == G.positive_form and W.dim == 3


def test_order_rejects_singular_weights():
    with pytest.raises(SemigroupError):
        MonomialOrder(((1, 1), (2, 2)))

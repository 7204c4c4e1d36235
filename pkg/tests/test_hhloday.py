import pytest

from comvar.exactlin import QQ, ZZ
from comvar.hhloday import (BaseAlgebra, LodayComplex, circle,
                            hochschild_homology_ranks, shuffle_product,
                            torus2)


def test_simplicial_identities():
    circle().check_identities(8)
    torus2().check_identities(5)


def test_simplex_counts():
    c, t = circle(), torus2()
    for p in range(6):
        assert c.n_simplices(p) == p + 1
        assert t.n_simplices(p) == (p + 1) ** 2


@pytest.mark.parametrize("base,model,normalized", [
    (BaseAlgebra("poly", 2), circle(), False),
    (BaseAlgebra("ext", 1), circle(), False),
    (BaseAlgebra("ext", 1), circle(), True),
    (BaseAlgebra("poly", 2), torus2(), False),
])
def test_dv_squared_zero(base, model, normalized):
    cx = LodayComplex(base, model, normalized=normalized)
    for p in range(2, 5):
        for internal in range(0, 5):
            for tup in cx.level_basis(p, internal):
                d1 = cx.vertical_differential(p, {tup: 1})
                assert not cx.vertical_differential(p - 1, d1), (p, tup)


def test_hochschild_classical_polynomial_circle():
    tab = hochschild_homology_ranks(BaseAlgebra("poly", 2), circle(), 8, ZZ)
    assert [tab.ranks[d] for d in range(9)] == [1, 0, 1, 1, 1, 1, 1, 1, 1]
    assert not tab.has_torsion


def test_hochschild_classical_exterior_circle():
    tab = hochschild_homology_ranks(BaseAlgebra("ext", 1), circle(), 8, ZZ)
    assert [tab.ranks[d] for d in range(9)] == [1] * 9
    assert not tab.has_torsion


def test_hochschild_torus():
    tab = hochschild_homology_ranks(BaseAlgebra("poly", 2), torus2(), 6, ZZ)
    assert [tab.ranks[d] for d in range(7)] == [1, 0, 1, 2, 2, 2, 3]
    assert not tab.has_torsion


def test_normalized_matches_unnormalized():
    norm = hochschild_homology_ranks(BaseAlgebra("ext", 1), circle(), 6, ZZ,
                                     normalized=True)
    unnorm = hochschild_homology_ranks(BaseAlgebra("ext", 1), circle(), 6, ZZ,
                                       normalized=False)
    assert norm.ranks == unnorm.ranks


def test_ranks_stable_under_truncation_increase():
    t1 = hochschild_homology_ranks(BaseAlgebra("poly", 2), circle(), 6, ZZ)
    t2 = hochschild_homology_ranks(BaseAlgebra("poly", 2), circle(), 8, ZZ)
    for d in range(7):
        assert t1.ranks[d] == t2.ranks[d]


def test_rational_ranks_agree_with_integral():
    a = hochschild_homology_ranks(BaseAlgebra("poly", 2), torus2(), 5, ZZ)
    b = hochschild_homology_ranks(BaseAlgebra("poly", 2), torus2(), 5, QQ)
    assert a.ranks == b.ranks


def test_shuffle_divided_powers():
    cx = LodayComplex(BaseAlgebra("ext", 1), circle(), normalized=True)
    g1 = {(0, 1): 1}
    assert shuffle_product(cx, 1, g1, 1, g1) == {(0, 1, 1): 2}
    assert shuffle_product(cx, 2, {(0, 1, 1): 1}, 1, g1) == {(0, 1, 1, 1): 3}


def test_shuffle_degree_zero_is_plain_product():
    cx = LodayComplex(BaseAlgebra("poly", 2), circle())
    res = shuffle_product(cx, 1, {(0, 1): 1}, 0, {(1,): 1})
    assert res == {(1, 1): 1}


def test_shuffle_of_cycles_is_cycle():
    cx = LodayComplex(BaseAlgebra("ext", 1), circle(), normalized=True)
    g1 = {(0, 1): 1}
    assert not cx.vertical_differential(1, g1)
    prod = shuffle_product(cx, 1, g1, 1, g1)
    assert not cx.vertical_differential(2, prod)


def test_shuffle_leibniz_unnormalized():
    cx = LodayComplex(BaseAlgebra("poly", 2), circle())
    for p, q in [(1, 1), (1, 2), (2, 1)]:
        for ta in cx.level_basis(p, 2):
            for tb in cx.level_basis(q, 2):
                a, b = {ta: 1}, {tb: 1}
                lhs = cx.vertical_differential(p + q,
                                               shuffle_product(cx, p, a, q, b))
                rhs = shuffle_product(cx, p - 1,
                                      cx.vertical_differential(p, a), q, b)
                sgn = -1 if p % 2 else 1
                for k, v in shuffle_product(
                        cx, p, a, q - 1,
                        cx.vertical_differential(q, b)).items():
                    rhs[k] = rhs.get(k, 0) + sgn * v
                assert lhs == {k: v for k, v in rhs.items() if v}


def test_base_algebra_validation():
    with pytest.raises(ValueError):
        BaseAlgebra("poly", 1)
    with pytest.raises(ValueError):
        BaseAlgebra("ext", 2)
    with pytest.raises(ValueError):
        BaseAlgebra("free", 2)

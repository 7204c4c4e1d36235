import random

import pytest

from comvar.relgen import TruncatedSeries
from comvar.superpoly import AlgebraSpec, Generator
from comvar.symvan import (NotSymmetric, SymPoly, adjugate_vandermonde,
                           complete_subset, e_algebra, elementary,
                           expand_in_t, is_symmetric, newton_polynomial,
                           poly_det, poly_mat_mul, t_algebra,
                           to_elementary_basis, vandermonde, vandermonde_det)


def test_newton_small_values():
    alg = AlgebraSpec([Generator(f"x{i}", 2 * i) for i in range(1, 4)])
    names = ["x1", "x2", "x3"]
    assert str(newton_polynomial(1, alg, names[:1])) == "x1"
    s2 = newton_polynomial(2, alg, names[:2])
    assert s2 == alg.gen("x1") ** 2 - 2 * alg.gen("x2")
    s3 = newton_polynomial(3, alg, names)
    assert s3 == (alg.gen("x1") ** 3 - 3 * alg.gen("x1") * alg.gen("x2")
                  + 3 * alg.gen("x3"))


def test_newton_generating_function_identity():
    # sum s_k s^{k-1} * f(s) + f'(s) = 0 through order n, f = sum (-1)^k x_k s^k
    n = 4
    alg = AlgebraSpec([Generator(f"x{i}", 2 * i) for i in range(1, n + 1)])
    names = [f"x{i}" for i in range(1, n + 1)]
    order = n
    f = TruncatedSeries(alg, order)
    f.coeffs[0] = alg.one()
    for k in range(1, n + 1):
        f.coeffs[k] = alg.gen(names[k - 1]).scale((-1) ** k)
    fprime = TruncatedSeries(alg, order)
    for k in range(1, n + 1):
        if k - 1 <= order:
            fprime.coeffs[k - 1] = alg.gen(names[k - 1]).scale((-1) ** k * k)
    s_series = TruncatedSeries(alg, order)
    for k in range(1, n + 1):
        s_series.coeffs[k - 1] = newton_polynomial(k, alg, names[:k])
    total = s_series * f + fprime
    # trustworthy only through order n - 1 (truncation of f')
    for i in range(n):
        assert not total.coeffs[i], i


def test_elementary_and_complete():
    t = t_algebra(2)
    assert elementary(1, 2) == t.gen("t1") + t.gen("t2")
    h2 = complete_subset(2, [1, 2], 2)
    expect = (t.gen("t1") ** 2 + t.gen("t1") * t.gen("t2")
              + t.gen("t2") ** 2)
    assert h2 == expect
    assert complete_subset(0, [], 2) == 1
    assert complete_subset(2, [], 2) == 0


def test_vandermonde_small():
    assert vandermonde_det(1) == 1
    assert adjugate_vandermonde(1)[0][0] == 1
    t = t_algebra(2)
    assert vandermonde_det(2) == t.gen("t2") - t.gen("t1")
    adj = adjugate_vandermonde(2)
    assert adj[0][0] == t.gen("t2") and adj[0][1] == -t.one()
    assert adj[1][0] == -t.gen("t1") and adj[1][1] == t.one()


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_adjugate_identity(n):
    adj = adjugate_vandermonde(n)   # adj*V = Delta*I verified on construction
    if n:
        assert len(adj) == n


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_det_of_adjugate(n):
    adj = adjugate_vandermonde(n)
    assert poly_det(adj) == vandermonde_det(n) ** (n - 1)


def test_to_elementary_examples():
    t = t_algebra(2)
    p2 = t.gen("t1") ** 2 + t.gen("t2") ** 2
    e = e_algebra(2)
    assert to_elementary_basis(p2, 2) == e.gen("e1") ** 2 - 2 * e.gen("e2")
    d2 = vandermonde_det(2) ** 2
    assert to_elementary_basis(d2, 2) == e.gen("e1") ** 2 - 4 * e.gen("e2")
    assert to_elementary_basis(t.one(), 2) == 1


def test_to_elementary_rejects_nonsymmetric():
    t = t_algebra(2)
    with pytest.raises(NotSymmetric):
        to_elementary_basis(t.gen("t1"), 2)
    with pytest.raises(NotSymmetric):
        SymPoly(t.gen("t1") * t.gen("t2") ** 2, 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_to_elementary_roundtrip_random(n):
    rng = random.Random(42 + n)
    t = t_algebra(n)
    for _ in range(50):
        p = t.zero()
        for _ in range(rng.randint(1, 3)):
            k = rng.randint(1, n)
            q = rng.randint(0, 2)
            c = rng.randint(-4, 4)
            p = p + (elementary(k, n) * elementary(1, n) ** q).scale(c)
        assert is_symmetric(p, n)
        assert expand_in_t(to_elementary_basis(p, n), n) == p


def test_poly_mat_mul():
    t = t_algebra(2)
    V = vandermonde(2)
    adj = adjugate_vandermonde(2)
    prod = poly_mat_mul(adj, V)
    delta = vandermonde_det(2)
    assert prod[0][0] == delta and prod[1][1] == delta
    assert prod[0][1] == 0 and prod[1][0] == 0

from itertools import combinations

import pytest

from comvar.relgen import (adjugate_identity_gap, b_algebra, coeff_c,
                           divided_minor, generator_images, matrix_A,
                           matrix_M, newton_identity_element,
                           presentation_algebra, recurrence_check,
                           relation_R, relation_Rprime, rho_x_image,
                           rho_z_image, w_image, z_power_sum_image)
from comvar.symvan import e_algebra


def test_matrix_M_n1():
    M = matrix_M(1, 3)
    t = M[0][0]
    alg = t.alg
    assert t.coeffs[0] == 0
    assert t.coeffs[1] == 1
    assert t.coeffs[2] == -alg.gen("t1")
    assert t.coeffs[3] == alg.gen("t1") ** 2


def test_matrix_M_n2_entry():
    M = matrix_M(2)
    t = M[0][1].alg
    assert M[0][1].coeffs[1] == -(t.gen("t1") + t.gen("t2"))
    # symmetry under the transposition is checked at construction


def test_coeff_c_matrix_n2():
    e = e_algebra(2)
    e1, e2 = e.gen("e1"), e.gen("e2")
    expect = {(1, 1): e1 ** 2 - 2 * e2, (1, 2): -e1, (2, 1): -e1,
              (2, 2): e.one(2)}
    for (i, j), val in expect.items():
        assert coeff_c(1, (i,), (j,), 2) == val
    assert coeff_c(2, (1, 2), (1, 2), 2) == 1
    assert coeff_c(1, (1,), (1,), 1) == 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_divisibility_all_minors(n):
    for k in range(1, n + 1):
        for I in combinations(range(1, n + 1), k):
            for J in combinations(range(1, n + 1), k):
                divided_minor(n, I, J)   # NotDivisible would raise


def test_relation_R_n1():
    A = presentation_algebra(1, "Z")
    assert relation_R(1, 1).element == A.gen("Z1") - A.gen("X1") * A.gen("Y1")


def test_relation_R_n2_explicit():
    A = presentation_algebra(2, "Z")
    e1, e2 = A.gen("e1"), A.gen("e2")
    d2 = e1 * e1 - 4 * e2
    expect = (d2 * A.gen("Z1")
              - (e1 * e1 - 2 * e2) * (A.gen("X1") * A.gen("Y1"))
              + e1 * (A.gen("X1") * A.gen("Y2"))
              + e1 * (A.gen("X2") * A.gen("Y1"))
              - 2 * (A.gen("X2") * A.gen("Y2")))
    rec = relation_R(1, 2)
    assert rec.element == expect
    assert rec.coh_degree == 2 * (2 * 1 + 1)


def test_relation_R2_contains_quartic_term():
    A = presentation_algebra(2, "Z")
    quart = A.gen("X1") * A.gen("X2") * A.gen("Y1") * A.gen("Y2")
    key = next(iter(quart.terms))
    assert relation_R(2, 2).element.terms.get(key) == 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_degree_formula(n):
    for l in range(1, n + 1):
        assert relation_R(l, n).coh_degree == 2 * (n * (n - 1) + l)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_relations_vanish(n):
    rho, rhop = generator_images(n)
    for l in range(1, n + 1):
        assert rho(relation_R(l, n).element) == 0
        assert rhop(relation_Rprime(l, n).element) == 0


def test_generator_images_examples():
    B = b_algebra(2)
    assert rho_x_image(2, 2) == (B.gen("t1") * B.gen("u1")
                                 + B.gen("t2") * B.gen("u2"))
    assert rho_z_image(2, 1) == (B.gen("u1") * B.gen("v1")
                                 + B.gen("u2") * B.gen("v2"))
    z2 = rho_z_image(2, 2)
    expect = (-B.gen("t1") * B.gen("u1") * B.gen("v1")
              - B.gen("t2") * B.gen("u2") * B.gen("v2")
              + B.gen("u1") * B.gen("v1") * B.gen("u2") * B.gen("v2"))
    assert z2 == expect
    assert w_image(2, 1) == rho_z_image(2, 1)


def test_matrix_A_and_Rprime():
    e = e_algebra(2)
    a1 = matrix_A(1, 2)
    assert a1[0][0] == e.gen("e1") ** 2 - 2 * e.gen("e2")
    assert a1[0][1] == -e.gen("e1") == a1[1][0]
    assert a1[1][1] == 2
    A1 = presentation_algebra(1, "W", full_w=True)
    assert relation_Rprime(1, 1).element == \
        A1.gen("W1") - A1.gen("X1") * A1.gen("Y1")
    assert relation_Rprime(1, 2).biweight == (1, 1)


@pytest.mark.parametrize("n,k", [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3),
                                 (4, 1), (4, 2), (4, 3), (4, 4)])
def test_power_sum_identity(n, k):
    assert z_power_sum_image(n, k) == w_image(n, k).scale(k)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_newton_identity_maps_to_zero(n):
    rho, _ = generator_images(n)
    el = newton_identity_element(n)
    assert rho(el) == 0
    if n == 1:
        A = presentation_algebra(1, "Z")
        assert el == -(A.gen("Z1") - A.gen("X1") * A.gen("Y1"))


def test_newton_identity_n2_has_2Z2():
    A = presentation_algebra(2, "Z")
    el = newton_identity_element(2)
    key = next(iter(A.gen("Z2").terms))
    assert el.terms.get(key) == 2


@pytest.mark.parametrize("n,l", [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])
def test_recurrences_vanish(n, l):
    rx, rz = recurrence_check(n, l)
    assert rx == 0 and rz == 0


def test_recurrence_requires_l_above_n():
    with pytest.raises(ValueError):
        recurrence_check(2, 2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_adjugate_identity_all_subsets(n):
    for k in range(0, n + 1):
        for K in combinations(range(1, n + 1), k):
            assert adjugate_identity_gap(n, K) == 0

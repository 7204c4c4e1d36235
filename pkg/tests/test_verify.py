import pytest

from comvar.exactlin import GF, QQ
from comvar.relgen import b_algebra
from comvar.superpoly import graded_basis
from comvar.verify import (BadCharacteristic, example_n2_reproduction,
                           hilbert_compare, integral_properness_search,
                           invariant_dimension, invariant_lattice,
                           minimal_generator_count, sn_action,
                           tau_reduction_check, verification_report)


def test_invariant_dimension_examples():
    assert invariant_dimension(2, 1, QQ) == 2     # u1+u2, v1+v2
    assert invariant_dimension(2, 0, QQ) == 1
    B1 = b_algebra(1)
    for d in range(5):
        assert invariant_dimension(1, d, QQ) == len(graded_basis(B1, d))


def test_invariant_dimension_bad_characteristic():
    with pytest.raises(BadCharacteristic):
        invariant_dimension(2, 2, GF(2))
    assert invariant_dimension(2, 2, GF(5)) == invariant_dimension(2, 2, QQ)


def test_sn_action_is_ring_map():
    B = b_algebra(3)
    sigma = sn_action(3, [1, 2, 0])
    x = B.gen("u1") * B.gen("t2") + B.gen("v3")
    y = B.gen("u2") * B.gen("v1") - 2 * B.gen("t1")
    assert sigma(x * y) == sigma(x) * sigma(y)


def test_hilbert_compare_n1_trivial():
    rep = hilbert_compare(1, 6)
    assert rep.ok
    assert rep.image_dims == rep.invariant_dims == rep.ambient_dims


def test_hilbert_compare_n2():
    rep = hilbert_compare(2, 12)
    assert rep.ok and rep.first_mismatch is None
    assert rep.image_dims[2] == rep.invariant_dims[2]


def test_minimal_generator_counts():
    assert minimal_generator_count(1, QQ) == 2
    assert minimal_generator_count(2, QQ) == 5
    assert minimal_generator_count(2, GF(2)) == 6


def test_minimal_generator_count_stable_above_2n():
    assert minimal_generator_count(2, QQ, d_max=6) == 5


def test_tau_binomials():
    assert tau_reduction_check(1).ok
    assert tau_reduction_check(2).ok
    assert tau_reduction_check(3).ok


def test_example_reproduction():
    rep = example_n2_reproduction()
    assert rep.ok
    assert rep.reproduced == {(1, 1): 1, (2, 1): 2, (1, 2): 2, (2, 2): 4}
    # the published list omits one degree-4 relation; it must be surfaced
    assert rep.surplus == {(2, 2): ["1*W1^2 + -1*X1*Y1*W1"]}
    assert not rep.diffs


def test_integral_properness_witness_found():
    rep = integral_properness_search(2, 12)
    assert rep.conclusive
    assert rep.witness_degree is not None and rep.witness_degree <= 12


def test_invariant_lattice_n2_d1():
    lat = invariant_lattice(2, 1)
    assert len(lat) == 2


def test_verification_report_n2():
    rep = verification_report(2, QQ, d_max=8)
    assert rep["ok"]
    assert rep["checks"]["minimal_generators"]["count"] == 5
    assert rep["checks"]["worked_example"]["ok"]


def test_image_lands_in_integral_invariants():
    # the evaluation map is equivariant on generators, hence its whole image
    # lies in the S_n-invariants over Z; check the generators directly
    from comvar.idealcalc import evaluation_hom
    from comvar.relgen import presentation_algebra
    for n in (2, 3):
        hom = evaluation_hom(n, "Z")
        A = presentation_algebra(n, "Z")
        for s in range(n - 1):
            perm = list(range(n))
            perm[s], perm[s + 1] = perm[s + 1], perm[s]
            sigma = sn_action(n, perm)
            for g in A.generators:
                img = hom(A.gen(g.name))
                assert sigma(img) == img, (n, g.name)

import random
from fractions import Fraction

import numpy as np
import pytest

from fermatsg.collection import (
    K0Vector,
    ReductionError,
    bidiagonal,
    comparison_isomorphism,
    gram_matrix,
    in_box,
    index_set,
    integer_lift,
    kronecker_check,
    membership_in_T,
    mu,
    pairing_check,
    phi_distance,
    reduce_class,
    step_bound,
    triple_tensor_collection,
    verify_exceptional,
)
from fermatsg.dgcat import euler_matrix
from fermatsg.grading import Weight, enumerate_window


def test_index_set_examples():
    I = index_set((2, 2, 2))
    assert list(I) == [Weight(2, 2, 2).zero]
    w = Weight(3, 3, 3)
    I = index_set(w)
    assert len(I) == 8
    assert I[0] == w.zero and I[-1] == -(w.x + w.y + w.z)
    assert I.coordinates()[:4] == [(0, 0, 0), (-1, 0, 0), (0, -1, 0), (0, 0, -1)]
    assert [mu(n) for n in I][:2] == [(1, 1, 1), (2, 1, 1)]


def test_index_set_size(weight):
    w = weight
    I = index_set(w)
    assert len(I) == (w.p0 - 1) * (w.p1 - 1) * (w.p2 - 1)
    assert len(set(I)) == len(I)
    sums = [sum(t) for t in I.coordinates()]
    assert sums == sorted(sums, reverse=True)


def test_in_box():
    w = Weight(3, 4, 5)
    assert in_box(-w.x - 3 * w.z) == (-1, 0, -3)
    assert in_box(-2 * w.x) is None
    assert in_box(w.x) is None
    assert in_box(-w.c) is None


def test_membership_on_index_set(weight):
    for n in index_set(weight):
        r = membership_in_T(n, 3)
        assert r["verdict"] == "PASS" and r["exhaustive"] and r["in_I"]
        assert r["checked_L_plus"] > 0 and r["checked_L_minus"] > 0


def test_membership_reported_outside_index_set():
    # k(-c) is evaluated and the violated criterion is reported
    w = Weight(3, 3, 3)
    r = membership_in_T(-w.c, 3)
    assert not r["in_I"]
    assert r["verdict"] == "FAIL"
    assert r["failures"] == [{"m": [2, 2, 2, -3], "set": "L-", "criterion": "free"}]


def test_membership_window_too_small_is_flagged():
    w = Weight(3, 4, 5)
    # phi(-2c + x + y + z) = -107/12 lies below the window [-5, 5]
    r = membership_in_T(w.zero, 1)
    assert r["verdict"] == "PASS" and r["exhaustive"] is False
    assert membership_in_T(w.zero, 2)["exhaustive"] is True


def test_verify_exceptional(weight):
    r = verify_exceptional(weight, 8)
    assert r["verdict"] == "PASS"
    assert r["objects"] == len(index_set(weight))


def test_triple_tensor_collection_objects(weight):
    C, objs = triple_tensor_collection(weight)
    assert len(C.objects) == len(objs) == len(index_set(weight))
    assert sorted(objs) == sorted(C.objects)


def test_comparison_isomorphism():
    for w in ((2, 2, 2), (3, 3, 3), (2, 4, 4)):
        r = comparison_isomorphism(w, max_degree=6)
        assert r["verdict"] == "PASS", r["failures"][:2]
        assert r["all_scalings_pm1"]
    assert comparison_isomorphism((3, 3, 3), max_degree=6)["compositions_checked"] == 64


def test_gram_and_kronecker(weight):
    r = kronecker_check(weight)
    assert r["verdict"] == "PASS" and r["determinant"] == 1 and r["upper_unipotent"]
    G = gram_matrix(weight)
    C, objs = triple_tensor_collection(weight)
    assert np.array_equal(G, euler_matrix(C, objs))


def test_gram_small_example():
    w = Weight(3, 3, 3)
    B = np.array([[1, -1], [0, 1]])
    assert np.array_equal(bidiagonal(3), B)
    assert np.array_equal(gram_matrix(w)[:1], np.array([[1, -1, -1, -1, 1, 1, 1, -1]]))


def test_integer_lift_recovers_the_element(weight):
    w = weight
    for m in enumerate_window(-2 * w.p2, 2 * w.p2, w):
        a, b, c = integer_lift(m)
        assert w.x * a + w.y * b + w.z * c == m


def test_reduce_class_examples():
    w = Weight(3, 3, 3)
    r = reduce_class(-2 * w.z)
    assert r.coeffs == {w.zero: -1, -w.z: -1}
    assert r.steps == 1
    w = Weight(2, 2, 2)
    # every class is a multiple of [k]; k(x) = -k and k(c) = k
    assert reduce_class(w.x).coeffs == {w.zero: -1}
    assert reduce_class(w.c).coeffs == {w.zero: 1}


def test_reduce_class_is_the_identity_on_I(weight):
    for n in index_set(weight):
        r = reduce_class(n)
        assert r.coeffs == {n: 1} and r.steps == 0


def test_reduce_class_respects_the_relations(weight):
    # sum_{i < p_v} [k(n - i v)] = 0 for v in {x, y, z}
    w = weight
    I = index_set(w)
    rng = random.Random(1)
    pool = enumerate_window(-w.p2, w.p2, w)
    for _ in range(30):
        n = rng.choice(pool)
        for v, p in zip((w.x, w.y, w.z), w):
            total = sum((reduce_class(n - i * v).as_array(I) for i in range(p)), np.zeros(len(I), dtype=np.int64))
            assert not total.any()


def test_step_bound_holds_on_window(weight):
    w = weight
    for m in enumerate_window(-3 * w.p2, 3 * w.p2, w):
        assert reduce_class(m).steps <= step_bound(m)


def test_phi_distance():
    w = Weight(3, 3, 3)
    assert phi_distance(w.zero) == 0
    assert phi_distance(w.c) == Fraction(3)


def test_reduction_guard():
    w = Weight(3, 4, 5)
    with pytest.raises(ReductionError):
        reduce_class(w.element(1, 2, 3, 4), guard=1)


def test_k0_vector_json():
    w = Weight(3, 3, 3)
    v = K0Vector(w, {w.zero: 2}, 0)
    assert v.to_json() == {"weight": [3, 3, 3], "coefficients": [[[0, 0, 0, 0], 2]], "steps": 0}


def test_pairing(weight):
    r = pairing_check(weight, 50, 0, 3)
    assert r["verdict"] == "PASS" and r["gram_equals_sg_euler"]


def test_reduce_class_along_the_z_axis(weight):
    # k(-(p2-1) z) is minus the sum of k(-i z) for i < p2 - 1
    w = weight
    r = reduce_class(-(w.p2 - 1) * w.z)
    assert r.coeffs == {-i * w.z: -1 for i in range(w.p2 - 1)}

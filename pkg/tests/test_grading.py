import itertools
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fermatsg.grading import (
    GradeElement,
    Weight,
    WeightError,
    add,
    box_coordinates,
    enumerate_window,
    from_json,
    in_L_minus,
    in_L_plus,
    in_positive_span,
    neg,
    normalize,
    phi,
    raw_phi,
    sub,
)

W236 = Weight(2, 3, 6)
W333 = Weight(3, 3, 3)


def test_normalize_examples():
    assert normalize((0, 0, 6, 0), W236).as_tuple() == (0, 0, 0, 1)
    u = normalize((1, 1, 1, -1), W236)
    assert u.as_tuple() == (1, 1, 1, -1)
    assert phi(u) == 0
    assert normalize((-1, 0, 0, 0), W333).as_tuple() == (2, 0, 0, -1)


def test_group_examples():
    z = W236.zero
    assert add(z, normalize((1, 0, 0, 0), W236)).as_tuple() == (1, 0, 0, 0)
    assert add(W236.x, W236.x).as_tuple() == (0, 0, 0, 1)
    # -x-y-z: every coordinate borrows once, so m = -3 (phi = 3 + 4 + 5 - 18 = -6)
    d = sub(z, normalize((1, 1, 1, 0), W236))
    assert d.as_tuple() == (1, 2, 5, -3)
    assert phi(d) == -(phi(W236.x) + phi(W236.y) + phi(W236.z))
    assert sub(W333.c, W333.c) == W333.zero
    assert neg(W333.x) == normalize((-1, 0, 0, 0), W333)


def test_phi_examples():
    assert phi(W236.x) == 3
    assert phi(W236.zero) == 0
    assert phi(W236.c) == 6
    assert phi(Weight(3, 4, 5).x) == Fraction(5, 3)


def test_bad_weights():
    with pytest.raises(WeightError):
        Weight(1, 3, 3)
    with pytest.raises(ValueError):
        GradeElement(3, 0, 0, 0, W333)
    with pytest.raises(ValueError):
        W333.x + W236.x


def test_json_round_trip(weight):
    for u in enumerate_window(-weight.p2, weight.p2, weight):
        data = json.loads(json.dumps(u.to_json()))
        assert from_json(data, weight) == u


def test_group_laws_random(weight):
    rng = random.Random(11)
    raw = lambda: normalize([rng.randint(-9, 9) for _ in range(4)], weight)
    for _ in range(1000):
        u, v, t = raw(), raw(), raw()
        assert (u + v) + t == u + (v + t)
        assert u + v == v + u
        assert u + (-u) == weight.zero
        assert normalize(u.as_tuple(), weight) == u
        assert phi(u + v) == phi(u) + phi(v)


@given(st.tuples(*[st.integers(-50, 50)] * 4), st.tuples(*[st.integers(-50, 50)] * 4))
def test_normalize_is_a_homomorphism(r, s):
    w = Weight(3, 4, 5)
    total = tuple(a + b for a, b in zip(r, s))
    assert normalize(r, w) + normalize(s, w) == normalize(total, w)
    assert raw_phi(r, w) == phi(normalize(r, w))


def _span_oracle(w: Weight, phi_max):
    """Every a x + b y + c z with a, b, c >= 0 and phi <= phi_max."""
    out = set()
    top = [int(phi_max / phi(g)) + 1 for g in (w.x, w.y, w.z)]
    for a in range(top[0] + 1):
        for b in range(top[1] + 1):
            for c in range(top[2] + 1):
                u = normalize((a, b, c, 0), w)
                if phi(u) <= phi_max:
                    out.add(u)
    return out


def test_positive_span_against_enumeration(weight):
    hi = 3 * weight.p2
    oracle = _span_oracle(weight, hi)
    for u in enumerate_window(-hi, hi, weight):
        assert in_positive_span(u) == (u in oracle), u


def test_L_plus_against_generators(weight):
    hi = 3 * weight.p2
    w = weight
    # L+ = -2c + (x + y + z) + span
    base = -2 * w.c + w.x + w.y + w.z
    oracle = {base + s for s in _span_oracle(w, hi - phi(base))}
    for u in enumerate_window(-hi, hi, w):
        assert in_L_plus(u) == (u in oracle), u
        assert in_L_minus(u) != in_L_plus(u)


def test_span_and_L_plus_examples(weight):
    assert in_positive_span(weight.zero)
    assert in_L_plus(normalize((1, 1, 1, -2), weight))
    assert not in_L_plus(weight.zero)
    assert not in_positive_span(normalize((-1, -1, -1, 2), W333))
    assert normalize((-1, -1, -1, 2), W333).as_tuple() == (2, 2, 2, -1)
    assert in_positive_span(W236.c)
    assert in_L_plus(W333.c)


def test_enumerate_window_examples():
    zero_slice = enumerate_window(0, 0, W333)
    assert W333.zero in zero_slice
    assert normalize((1, 1, 1, -1), W333) in zero_slice
    assert all(phi(u) == 0 for u in zero_slice)
    assert enumerate_window(5, 4, W333) == []
    assert W236.z in enumerate_window(0, 1, W236)


def test_enumerate_window_is_exhaustive(weight):
    lo, hi = Fraction(-7, 2), Fraction(11, 3)
    got = enumerate_window(lo, hi, weight)
    assert got == sorted(got, key=lambda u: (phi(u), u.a, u.b, u.c))
    brute = set()
    for a, b, c in itertools.product(range(weight.p0), range(weight.p1), range(weight.p2)):
        for m in range(-5, 6):
            u = GradeElement(a, b, c, m, weight)
            if lo <= phi(u) <= hi:
                brute.add(u)
    assert set(got) == brute


def test_box_coordinates(weight):
    w = weight
    for a in range(-w.p0 + 1, 1):
        for b in range(-w.p1 + 1, 1):
            for c in range(-w.p2 + 1, 1):
                assert box_coordinates(w.x * a + w.y * b + w.z * c) == (a, b, c)
    assert box_coordinates(w.x) is None or w.p0 == 1

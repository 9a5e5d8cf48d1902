import pytest

from fermatsg.algebra import variables
from fermatsg.fields import GF
from fermatsg.grading import Weight, phi
from fermatsg.resolution import (
    PeriodicResolution,
    base_shifts,
    check_exactness,
    check_matrix_factorization,
    composition_failures,
    koszul_resolution,
    maximal_ideal_violations,
    quotient_piece_dim,
)


def test_d1_is_z_y_x(weight):
    x, y, z = variables(weight)
    d1 = PeriodicResolution(weight).d(1)
    assert d1.entries == [[z, y, x]]


def test_low_stage_shifts():
    w = Weight(2, 3, 6)
    x, y, z, c = w.x, w.y, w.z, w.c
    assert base_shifts(w, 0) == [w.zero]
    assert base_shifts(w, 1) == [-z, -y, -x]
    assert base_shifts(w, 2) == [-y - z, -x - z, -x - y, -c]
    assert base_shifts(w, 3) == [-x - y - z, -c - z, -c - y, -c - x]
    assert -2 * c in base_shifts(w, 4)
    assert base_shifts(w, -1) == []


def test_periodic_tail(weight):
    res = PeriodicResolution(weight)
    assert res.d(7).entries == res.d(5).entries == res.d(3).entries
    assert res.d(8).entries == res.d(6).entries == res.d(4).entries
    assert res.shifts(7) == [u - weight.c for u in res.shifts(5)]
    assert res.shifts(6) == [u - weight.c for u in res.shifts(4)]


def test_entries_have_positive_phi_degree(weight):
    # a minimal resolution: every entry has positive degree, consistent with the shifts
    res = PeriodicResolution(weight)
    for s in range(1, 9):
        d = res.d(s)
        for i, row in enumerate(d.entries):
            for j, e in enumerate(row):
                if not e.is_zero():
                    assert phi(d.entry_degree(i, j)) > 0


def test_twist_adds_to_every_shift(weight):
    n = weight.element(1, -1, 0, 2)
    res = PeriodicResolution(weight, n)
    assert res.shifts(3) == [u + n for u in base_shifts(weight, 3)]
    assert not composition_failures(res, 8)


def test_soundness_through_stage_twelve(weight):
    res = PeriodicResolution(weight)
    assert composition_failures(res, 12) == []
    assert maximal_ideal_violations(res, 12) == []


def test_exactness(weight):
    r = check_exactness(weight.zero, 8, 2)
    assert r["verdict"] == "PASS", r["failures"][:2]


def test_exactness_over_finite_field():
    r = check_exactness(Weight(3, 3, 3).zero, 6, 2, GF(7))
    assert r["verdict"] == "PASS"


def test_matrix_factorization(weight):
    r = check_matrix_factorization(weight)
    assert r["d3d4_signs"] == [1, 1, 1, 1]
    assert r["d4d3_signs"] == [1, 1, 1, 1]
    assert not r["sign_adjustment_used"]
    assert r["d1d2_zero_mod_f"] and r["d2d3_zero_mod_f"]


def test_koszul_single_variable(weight):
    cert = koszul_resolution(["x"], weight=weight)
    assert cert.is_perfect and cert.length == 1
    cert = koszul_resolution(["y", "z"], weight=weight)
    assert cert.is_perfect and cert.length == 2
    assert cert.to_json()["verdict"] == "PASS"


def test_koszul_twisted():
    w = Weight(2, 4, 4)
    cert = koszul_resolution(["x", "y"], n=w.element(0, 1, 0, -1))
    assert cert.is_perfect


@pytest.mark.parametrize("bad", [[], ["x", "x"], ["x", "y", "z"], ["w"]])
def test_koszul_rejects(bad):
    with pytest.raises(ValueError):
        koszul_resolution(bad, weight=(3, 3, 3))


def test_quotient_piece_dims():
    w = Weight(3, 3, 3)
    # A/(x) = k[y, z]/(y^3 + z^3); degree 0 and y^2 z
    assert quotient_piece_dim(["x"], w.zero) == 1
    assert quotient_piece_dim(["x"], 2 * w.y + w.z) == 1
    # A/(x, y) = k[z]/(z^3)
    assert quotient_piece_dim(["x", "y"], 2 * w.z) == 1
    assert quotient_piece_dim(["x", "y"], 3 * w.z) == 0


def test_serializations():
    res = PeriodicResolution((2, 2, 2))
    js = res.to_json(2)
    assert [s["stage"] for s in js["stages"]] == [0, 1, 2]
    assert js["stages"][0]["differential"] is None
    tex = res.to_tex(2)
    assert tex.startswith("F_{0} = A(0)")

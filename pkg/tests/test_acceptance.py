"""Every acceptance criterion on every test weight, one PASS/FAIL line each."""
from fractions import Fraction

import pytest

from fermatsg.grading import Weight, phi
from fermatsg.selftest import CRITERIA, NAMES, TIME_LIMITS, run_criterion

from conftest import ACCEPTANCE_LINES, ELLIPTIC, TEST_WEIGHTS

EXPECTED_COUNTS = {(2, 2, 2): 1, (3, 3, 3): 8, (2, 4, 4): 9, (2, 3, 6): 10, (3, 4, 5): 24}
FULL_RUN_LIMIT = 600.0

_elapsed = {}


def _record(label, ok, detail=""):
    line = "%s %s%s" % ("PASS" if ok else "FAIL", label, (": " + detail) if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.mark.parametrize("w", TEST_WEIGHTS, ids=lambda w: "w%d%d%d" % w)
@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, w):
    r = run_criterion(k, w)
    _elapsed[(k, w)] = r["seconds"]
    extra = "%.2fs" % r["seconds"]
    if k in TIME_LIMITS:
        extra += " (limit %.0fs)" % TIME_LIMITS[k]
    _record("criterion %2d %-24s weight %s" % (k, NAMES[k], w), r["passed"], extra)
    assert r["passed"], r["detail"]


@pytest.mark.parametrize("w", TEST_WEIGHTS, ids=lambda w: "w%d%d%d" % w)
def test_criterion_5_object_counts(w):
    r = run_criterion(5, w)
    ok = r["detail"]["objects"] == EXPECTED_COUNTS[w]
    _record("criterion  5 object count %d          weight %s" % (EXPECTED_COUNTS[w], w), ok)
    assert ok


def test_criterion_6_elliptic_weights():
    zero = [w for w in TEST_WEIGHTS if phi(Weight.of(w).x + Weight.of(w).y + Weight.of(w).z - Weight.of(w).c) == 0]
    ok = zero == ELLIPTIC
    _record("criterion  6 phi(x+y+z-c) = 0 exactly on %s" % ELLIPTIC, ok)
    assert ok
    assert all(sum(Fraction(1, p) for p in w) == 1 for w in ELLIPTIC)


def test_criterion_4_pair_count_for_236():
    r = run_criterion(4, (2, 3, 6))
    ok = r["detail"]["pairs"] == 100
    _record("criterion  4 100 ordered pairs         weight (2, 3, 6)", ok)
    assert ok


def test_full_selftest_time():
    # the sum of the per-criterion runs above, or a fresh run if they were deselected
    missing = [(k, w) for k in CRITERIA for w in TEST_WEIGHTS if (k, w) not in _elapsed]
    for k, w in missing:
        _elapsed[(k, w)] = run_criterion(k, w)["seconds"]
    total = sum(_elapsed.values())
    ok = total < FULL_RUN_LIMIT
    _record("full selftest across all five weights", ok, "%.1fs (limit %.0fs)" % (total, FULL_RUN_LIMIT))
    assert ok

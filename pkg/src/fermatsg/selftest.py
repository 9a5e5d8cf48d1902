"""The numbered acceptance criteria, runnable one weight at a time."""
from __future__ import annotations

import random
import time
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Optional

from .collection import (
    comparison_isomorphism,
    index_set,
    kronecker_check,
    membership_in_T,
    pairing_check,
    triple_tensor_collection,
    verify_exceptional,
)
from .dgcat import (
    PretrHom,
    TwistedComplex,
    cone,
    directed_category,
    identity_morphism,
    pretr_category,
    random_closed_morphism,
    random_morphism,
    random_twisted_complex,
    tensor,
)
from .fields import QQ, FieldSpec
from .grading import Weight, enumerate_window, phi
from .homalg import (
    DEFAULT_MAX_STAGE,
    ext_dim,
    ext_dim_oracle,
    gorenstein_check,
    rhom_table,
)
from .resolution import (
    PeriodicResolution,
    check_exactness,
    check_matrix_factorization,
    composition_failures,
    maximal_ideal_violations,
)

TEST_WEIGHTS = [(2, 2, 2), (3, 3, 3), (2, 4, 4), (2, 3, 6), (3, 4, 5)]
DEFAULT_SEED = 20240607

NAMES = {
    1: "resolution soundness",
    2: "resolution exactness",
    3: "matrix factorization",
    4: "RHom table",
    5: "exceptional collection",
    6: "Gorenstein duality",
    7: "comparison isomorphism",
    8: "lattice check",
    9: "generation bookkeeping",
    10: "DG-category properties",
    11: "oracle independence",
}

TIME_LIMITS = {1: 5.0, 2: 60.0}


def c1(w: Weight, field: FieldSpec, stages: int, window: int, seed: int) -> dict:
    res = PeriodicResolution(w, None, field)
    bad = composition_failures(res, stages)
    viol = maximal_ideal_violations(res, stages)
    return {"failures": bad, "maximal_ideal_violations": [list(v) for v in viol], "ok": not bad and not viol}


def c2(w, field, stages, window, seed) -> dict:
    r = check_exactness(w.zero, stages, window, field)
    return {"degrees": r["window"]["degrees"], "failures": r["failures"][:3], "ok": r["verdict"] == "PASS"}


def c3(w, field, stages, window, seed) -> dict:
    r = check_matrix_factorization(w)
    return {"d3d4_signs": r["d3d4_signs"], "d4d3_signs": r["d4d3_signs"], "ok": r["verdict"] == "PASS"}


def c4(w, field, stages, window, seed) -> dict:
    I = list(index_set(w))
    _, verdict = rhom_table(w, I, stages)
    return {"pairs": verdict["pairs_compared"], "mismatches": verdict["mismatches"][:3],
            "ok": verdict["verdict"] == "PASS" and verdict["pairs_compared"] == len(I) ** 2}


def c5(w, field, stages, window, seed) -> dict:
    r = verify_exceptional(w, stages)
    want = (w.p0 - 1) * (w.p1 - 1) * (w.p2 - 1)
    members = [membership_in_T(n, window) for n in index_set(w)]
    in_T = all(m["verdict"] == "PASS" and m["exhaustive"] for m in members)
    return {"objects": r["objects"], "expected_objects": want, "failures": r["failures"][:3], "members_of_T": in_T,
            "ok": r["verdict"] == "PASS" and r["objects"] == want and in_T}


def c6(w, field, stages, window, seed) -> dict:
    r = gorenstein_check(w, stages, window, field)
    omega = w.x + w.y + w.z - w.c
    elliptic = Fraction(1, w.p0) + Fraction(1, w.p1) + Fraction(1, w.p2) == 1
    phi_zero = phi(omega) == 0
    return {"totals": r["totals"], "degree2_support": r["degree2_support"], "phi_of_twist": str(phi(omega)),
            "ok": r["verdict"] == "PASS" and phi_zero == elliptic}


def c7(w, field, stages, window, seed) -> dict:
    r = comparison_isomorphism(w, field, stages)
    return {"compositions_checked": r.get("compositions_checked", 0), "all_scalings_pm1": r.get("all_scalings_pm1"),
            "failures": r["failures"][:3], "ok": r["verdict"] == "PASS"}


def c8(w, field, stages, window, seed) -> dict:
    r = kronecker_check(w)
    return {k: r[k] for k in ("size", "determinant", "gram_equals_kronecker")} | {"ok": r["verdict"] == "PASS"}


def c9(w, field, stages, window, seed) -> dict:
    r = pairing_check(w, 50, seed, window)
    return {"samples": r["samples"], "max_steps_over_bound": r["max_steps_over_bound"],
            "failures": r["failures"][:3], "ok": r["verdict"] == "PASS"}


def dg_suite(w: Weight, instances: int = 200, seed: int = DEFAULT_SEED, field: FieldSpec = QQ) -> dict:
    """Axioms on the constructed categories and randomized Pre-Tr checks."""
    rng = random.Random(seed)
    errors: List[str] = []
    D = [directed_category(p, field) for p in w]
    T, _ = triple_tensor_collection(w, field)
    small = tensor(D[0], D[1])
    for C in D + [small, T]:
        errors += C.check_axioms(limit=3)
    # a base with nonzero differential: Pre-Tr over the A_2 category
    A2 = directed_category(3, field)
    L1 = TwistedComplex.single(A2, (1,), 1)
    L2 = TwistedComplex.single(A2, (2,), 0)
    K = cone(L1, L2, {(0, 0, 0): 1})
    P = pretr_category([K, L1, L2], [("C",), ("L1",), ("L2",)])
    errors += P.check_axioms(limit=3)
    bases = [D[0], small, P, D[-1]]
    counts = {"d_squared": 0, "cones": 0, "shifts": 0, "nonzero_D": 0, "cones_with_components": 0}
    for t in range(instances):
        C = bases[t % len(bases)]
        K1 = random_twisted_complex(C, rng, rng.randint(1, 3))
        K2 = random_twisted_complex(C, rng, rng.randint(1, 3))
        H = PretrHom(K1, K2)
        f = random_morphism(H, rng)
        Df = H.differential(f)
        counts["nonzero_D"] += bool(Df)
        if H.differential(Df):
            errors.append(f"instance {t}: D^2 != 0")
        counts["d_squared"] += 1
        phi_ = random_closed_morphism(K1, K2, rng)
        Kc = cone(K1, K2, phi_)
        counts["cones_with_components"] += bool(Kc.q)
        if not Kc.is_one_sided() or Kc.violations():
            errors.append(f"instance {t}: cone not one-sided or not Maurer-Cartan")
        counts["cones"] += 1
        n = rng.randint(-2, 2)
        Ks = K1.shift(n)
        if not Ks.is_one_sided() or Ks.violations():
            errors.append(f"instance {t}: shift not one-sided")
        counts["shifts"] += 1
    # cone of an identity is contractible
    for C in (D[-1], small, P):
        for X in C.objects[:2]:
            K = TwistedComplex.single(C, X, 0)
            Kc = cone(K, K, identity_morphism(K))
            if PretrHom(Kc, Kc).cohomology_dims():
                errors.append(f"cone of id on {X} is not contractible")
    return {"instances": instances, "counts": counts, "errors": errors[:5], "ok": not errors}


def c10(w, field, stages, window, seed) -> dict:
    return dg_suite(w, 200, seed, field)


def oracle_pairs(w: Weight, count: int, seed: int):
    """Random pairs, half of them near an Ext-nonzero configuration."""
    rng = random.Random(seed)
    pool = enumerate_window(-w.p2, w.p2, w)
    gens = (w.x, w.y, w.z)
    out = []
    for k in range(count):
        m = rng.choice(pool)
        if k % 2:
            n = rng.choice(pool)
        else:
            S = rng.choice([S for r in range(4) for S in combinations(gens, r)])
            n = m
            for g in S:
                n = n - g
            n = n + rng.randint(-3, 1) * w.c
        out.append((m, n))
    return out


def c11(w, field, stages, window, seed) -> dict:
    I = list(index_set(w))
    pairs = [(m, n) for m in I for n in I] + oracle_pairs(w, 100, seed)
    cache: Dict = {}
    mism = []
    nonzero = 0
    for m, n in pairs:
        res = cache.get(m)
        if res is None:
            res = cache[m] = PeriodicResolution(w, m, field)
        for i in range(stages + 1):
            a = ext_dim(m, n, i)
            b = ext_dim_oracle(m, n, i, field, res)
            nonzero += bool(a)
            if a != b:
                mism.append({"m": m.to_json(), "n": n.to_json(), "i": i, "combinatorial": a, "oracle": b})
    return {"pairs": len(pairs), "nonzero_entries": nonzero, "mismatches": mism[:3], "ok": not mism}


CRITERIA: Dict[int, Callable] = {1: c1, 2: c2, 3: c3, 4: c4, 5: c5, 6: c6, 7: c7, 8: c8, 9: c9, 10: c10, 11: c11}


def run_criterion(k: int, w, field: FieldSpec = QQ, stages: int = DEFAULT_MAX_STAGE, window: int = 3,
                  seed: int = DEFAULT_SEED) -> dict:
    w = Weight.of(w)
    t0 = time.perf_counter()
    detail = CRITERIA[k](w, field, stages, window, seed)
    elapsed = time.perf_counter() - t0
    ok = bool(detail.pop("ok"))
    limit = TIME_LIMITS.get(k)
    if limit is not None and elapsed > limit:
        ok = False
        detail["time_limit_exceeded"] = limit
    return {"criterion": k, "name": NAMES[k], "weight": w.to_json(), "passed": ok,
            "seconds": round(elapsed, 3), "detail": detail}


def run_selftest(weights=None, field: FieldSpec = QQ, stages: int = DEFAULT_MAX_STAGE, window: int = 3,
                 seed: int = DEFAULT_SEED, criteria=None, progress: Optional[Callable[[dict], None]] = None) -> dict:
    weights = [Weight.of(w) for w in (weights or TEST_WEIGHTS)]
    criteria = list(criteria or CRITERIA)
    results = []
    t0 = time.perf_counter()
    for w in weights:
        for k in criteria:
            r = run_criterion(k, w, field, stages, window, seed)
            results.append(r)
            if progress:
                progress(r)
    return {
        "weights": [w.to_json() for w in weights],
        "field": field.to_json(),
        "stages": stages,
        "window": window,
        "seed": seed,
        "results": results,
        "passed": all(r["passed"] for r in results),
        "seconds": round(time.perf_counter() - t0, 3),
    }


def format_line(r: dict) -> str:
    return "%s criterion %2d (%s) weight %s: %.2fs" % (
        "PASS" if r["passed"] else "FAIL", r["criterion"], r["name"], tuple(r["weight"]), r["seconds"])

"""Ext between twisted simple modules, Yoneda products, RHom into A(n).

Every entry of the resolution lies in the maximal ideal, so
``Hom(F_.(m), k(n))`` has zero differential and
``dim Ext^i(k(m), k(n))`` is the number of stage-``i`` summands
``A(u + m)`` with ``u + m = n``.  :func:`ext_dim_oracle` recomputes the
same number from degreewise scalar matrices without using that shortcut.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .algebra import RingElement
from .fields import QQ, FieldSpec
from .gmod import GradedMap, compose, element_to_vector, vector_to_element
from .grading import GradeElement, Weight, enumerate_window, in_positive_span, phi
from .resolution import PeriodicResolution, base_shifts

DEFAULT_MAX_STAGE = 12
DEFAULT_WINDOW = 3


class LiftingError(RuntimeError):
    """A degreewise lifting system had no solution (broken resolution)."""


@lru_cache(maxsize=None)
def _shift_index(w: Weight, i: int) -> Dict[GradeElement, Tuple[int, ...]]:
    idx: Dict[GradeElement, list] = {}
    for j, u in enumerate(base_shifts(w, i)):
        idx.setdefault(u, []).append(j)
    return {u: tuple(v) for u, v in idx.items()}


def ext_summands(m: GradeElement, n: GradeElement, i: int) -> Tuple[int, ...]:
    """Stage-``i`` summand indices realizing ``Ext^i(k(m), k(n))``."""
    if i < 0:
        return ()
    return _shift_index(m.weight, i).get(n - m, ())


def ext_dim(m: GradeElement, n: GradeElement, i: int) -> int:
    """``dim Ext^i(k(m), k(n))`` read off the resolution."""
    if i < 0:
        raise ValueError("cohomological degree must be >= 0")
    return len(ext_summands(m, n, i))


def ext_dims(m: GradeElement, n: GradeElement, max_stage: int = DEFAULT_MAX_STAGE) -> List[int]:
    return [ext_dim(m, n, i) for i in range(max_stage + 1)]


# --- independent oracle -----------------------------------------------------

def _constant_block(d: GradedMap, n: GradeElement) -> "linalg.np.ndarray":
    """``d (x) k`` restricted to generators in internal degree ``-n``."""
    v = -n
    mat = d.graded_piece_matrix(v)
    rows, off = [], 0
    for s in d.target.shifts:
        dim = max((s + v).m + 1, 0)
        if s == n:
            rows.append(off)  # basis of A_0 is just the monomial 1
        off += dim
    cols, off = [], 0
    for s in d.source.shifts:
        dim = max((s + v).m + 1, 0)
        if s == n:
            cols.append(off)
        off += dim
    out = linalg.zeros(len(rows), len(cols))
    for a, r in enumerate(rows):
        for b, c in enumerate(cols):
            out[a, b] = mat[r, c]
    return out


def ext_dim_oracle(m: GradeElement, n: GradeElement, i: int, field: FieldSpec = QQ,
                   res: Optional[PeriodicResolution] = None) -> int:
    """Cohomology of ``Hom(F_.(m), k(n))`` at position ``i`` via scalar matrices."""
    res = res or PeriodicResolution(m.weight, m, field)
    dim_i = sum(1 for s in res.shifts(i) if s == n)
    r_in = linalg.rank(_constant_block(res.d(i), n), field) if i >= 1 else 0  # delta^i = (d_i (x) k)^T
    r_out = linalg.rank(_constant_block(res.d(i + 1), n), field)
    return dim_i - r_in - r_out


# --- tables and the case analysis -------------------------------------------

def expected_pattern(m: GradeElement, n: GradeElement) -> Dict[int, int]:
    """The four-case answer: ``{len(S): 1}`` if ``n = m - sum(S)`` for a
    subset ``S`` of ``{x, y, z}``, else empty."""
    w = m.weight
    gens = (w.x, w.y, w.z)
    out: Dict[int, int] = {}
    for r in range(4):
        for S in combinations(gens, r):
            t = m
            for g in S:
                t = t - g
            if t == n:
                out[r] = out.get(r, 0) + 1
    return out


@dataclass
class ExtTable:
    weight: Weight
    dims: Dict[Tuple[GradeElement, GradeElement, int], int]
    objects: List[GradeElement]
    max_stage: int

    def get(self, m, n, i) -> int:
        return self.dims.get((m, n, i), 0)

    def rows(self):
        for m in self.objects:
            for n in self.objects:
                for i in range(self.max_stage + 1):
                    yield m, n, i, self.get(m, n, i)

    def to_json(self, degrees: Optional[int] = None):
        top = self.max_stage if degrees is None else degrees
        return {
            "weight": self.weight.to_json(),
            "max_stage": top,
            "objects": [o.to_json() for o in self.objects],
            "entries": [
                {"m": m.to_json(), "n": n.to_json(), "i": i, "dim": d}
                for m, n, i, d in self.rows()
                if i <= top
            ],
        }

    def to_csv(self, degrees: Optional[int] = None) -> str:
        top = self.max_stage if degrees is None else degrees
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["m", "n", "i", "dim"])
        for m, n, i, d in self.rows():
            if i <= top:
                wr.writerow([json.dumps(m.to_json()), json.dumps(n.to_json()), i, d])
        return buf.getvalue()


def rhom_table(w, objects: Sequence[GradeElement], max_stage: int = DEFAULT_MAX_STAGE,
               compare_on: Optional[Sequence[GradeElement]] = None) -> Tuple[ExtTable, dict]:
    """Ext dimensions on ``objects x objects`` plus a verdict.

    Pairs inside ``compare_on x compare_on`` (default: all objects) are
    compared with :func:`expected_pattern` in every degree ``0..max_stage``.
    """
    w = Weight.of(w)
    objects = list(objects)
    dims = {}
    for m in objects:
        for n in objects:
            for i in range(max_stage + 1):
                d = ext_dim(m, n, i)
                if d:
                    dims[(m, n, i)] = d
    table = ExtTable(w, dims, objects, max_stage)
    cmp = set(compare_on if compare_on is not None else objects)
    mismatches = []
    compared = 0
    for m in objects:
        if m not in cmp:
            continue
        for n in objects:
            if n not in cmp:
                continue
            compared += 1
            exp = expected_pattern(m, n)
            got = {i: table.get(m, n, i) for i in range(max_stage + 1) if table.get(m, n, i)}
            if got != exp:
                mismatches.append({"m": m.to_json(), "n": n.to_json(), "computed": got, "expected": exp})
    verdict = {
        "pairs_compared": compared,
        "mismatches": mismatches,
        "verdict": "PASS" if not mismatches else "FAIL",
    }
    return table, verdict


def vanishing_criteria(m: GradeElement, n: GradeElement) -> Tuple[bool, bool]:
    """The two sufficient vanishing conditions, evaluated literally.

    First: ``RHom(k(m), k(n)) = 0`` whenever ``m`` is not in
    ``n + N x + N y + N z``.  Second: ``RHom(k(m), A(n)) = 0`` whenever
    ``m != -c + x + y + z + n``.
    """
    w = m.weight
    first = not in_positive_span(m - n)
    second = m != (-w.c + w.x + w.y + w.z + n)
    return first, second


def singularity_euler_form(m: GradeElement, n: GradeElement) -> int:
    """Euler pairing ``chi(k(m), k(n))`` in the singularity category.

    Stable Ext is 2-periodic with ``[2] = (c)``; summing ``(-1)^d`` over all
    ``d`` collapses to stages 3 and 4 of the resolution, with every
    ``c``-translate of the target counted once.
    """
    w = m.weight
    total = 0
    for s, sign in ((3, -1), (4, 1)):
        seen = set()
        for u in base_shifts(w, s):
            t = m + u - n
            if t.a == t.b == t.c == 0 and t.m not in seen:
                seen.add(t.m)
                total += sign * ext_dim(m, n + t.m * w.c, s)
    return total


# --- Yoneda products ---------------------------------------------------------

@dataclass(frozen=True)
class ExtClass:
    """An element of ``Ext^degree(k(source), k(target))`` in the canonical basis.

    ``coeffs`` pairs stage-``degree`` summand indices with scalars.
    """

    source: GradeElement
    target: GradeElement
    degree: int
    coeffs: Tuple[Tuple[int, object], ...]

    @classmethod
    def basis(cls, source, target, degree, index=None, coeff=1) -> "ExtClass":
        idx = ext_summands(source, target, degree)
        if not idx:
            raise ValueError(f"Ext^{degree}(k({source}), k({target})) = 0")
        if index is None:
            index = idx[0]
        if index not in idx:
            raise ValueError(f"summand {index} does not realize this Ext group")
        return cls(source, target, degree, ((index, coeff),))

    @property
    def index(self) -> Optional[int]:
        return self.coeffs[0][0] if len(self.coeffs) == 1 else None

    @property
    def coefficient(self):
        return self.coeffs[0][1] if len(self.coeffs) == 1 else None

    def coefficient_of(self, index: int):
        return dict(self.coeffs).get(index, 0)

    def is_zero(self) -> bool:
        return all(c == 0 for _, c in self.coeffs)

    def __post_init__(self):
        valid = set(ext_summands(self.source, self.target, self.degree))
        for j, _ in self.coeffs:
            if j not in valid:
                raise ValueError(f"summand {j} of stage {self.degree} does not map k({self.source}) to k({self.target})")

    def to_json(self):
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "degree": self.degree,
            "coeffs": [[j, str(c)] for j, c in self.coeffs],
        }


class YonedaEngine:
    """Chain-map lifting against the periodic resolutions, with caching."""

    def __init__(self, weight, field: FieldSpec = QQ, pivot_order: str = "first"):
        self.weight = Weight.of(weight)
        self.field = field
        self.pivot_order = pivot_order
        self._res: Dict[GradeElement, PeriodicResolution] = {}
        self._lifts: Dict[Tuple, List[GradedMap]] = {}

    def resolution(self, twist: GradeElement) -> PeriodicResolution:
        r = self._res.get(twist)
        if r is None:
            r = self._res[twist] = PeriodicResolution(self.weight, twist, self.field)
        return r

    def lift(self, xi: ExtClass, depth: int) -> List[GradedMap]:
        """Maps ``L_t: F_{i+t}(m) -> F_t(n)`` with ``d L_t = L_{t-1} d``.

        ``L_0`` sends the generators picked out by ``xi`` to 1 in ``A(n)``.
        """
        key = (xi, depth)
        if key in self._lifts:
            return self._lifts[key]
        i = xi.degree
        src = self.resolution(xi.source)
        tgt = self.resolution(xi.target)
        w, F = self.weight, self.field
        shifts = src.shifts(i)
        row = []
        for j in range(len(shifts)):
            c = xi.coefficient_of(j)
            row.append(RingElement.constant(c, w, F) if c else RingElement.zero(w, F))
        lifts = [GradedMap(src.module(i), tgt.module(0), [row], F)]
        for t in range(1, depth + 1):
            rhs = compose(lifts[-1], src.d(i + t))
            d_t = tgt.d(t)
            cols = []
            for r, wr in enumerate(src.shifts(i + t)):
                v = -wr
                column = [rhs.entries[k][r] for k in range(rhs.target.rank)]
                vec = element_to_vector(rhs.target, column, v)
                if all(e == 0 for e in vec):
                    cols.append([RingElement.zero(w, F)] * d_t.source.rank)
                    continue
                sol = linalg.solve(d_t.graded_piece_matrix(v), vec, F, self.pivot_order)
                if sol is None:
                    raise LiftingError(f"cannot lift {xi} at stage {t}, column {r}")
                cols.append(vector_to_element(d_t.source, sol, v, F))
            ents = [[cols[r][k] for r in range(len(cols))] for k in range(d_t.source.rank)]
            lifts.append(GradedMap(src.module(i + t), d_t.source, ents, F))
        self._lifts[key] = lifts
        return lifts

    def compose(self, xi: ExtClass, eta: ExtClass) -> ExtClass:
        """The Yoneda product "first ``xi``, then ``eta``"."""
        if xi.target != eta.source:
            raise ValueError("classes do not compose: target of xi must be the source of eta")
        L = self.lift(xi, eta.degree)[-1]
        deg = xi.degree + eta.degree
        out = []
        for r in ext_summands(xi.source, eta.target, deg):
            s = 0
            for j, c in eta.coeffs:
                s += c * L.entries[j][r].constant_coefficient()
            out.append((r, self.field(s)))
        return ExtClass(xi.source, eta.target, deg, tuple(out))


def yoneda_compose(xi: ExtClass, eta: ExtClass, field: FieldSpec = QQ,
                   engine: Optional[YonedaEngine] = None) -> ExtClass:
    engine = engine or YonedaEngine(xi.source.weight, field)
    return engine.compose(xi, eta)


# --- RHom into free modules --------------------------------------------------

def rhom_into_free(m: GradeElement, n: GradeElement, max_stage: int = DEFAULT_MAX_STAGE,
                   window: int = DEFAULT_WINDOW, field: FieldSpec = QQ) -> dict:
    """Cohomology of ``Hom(F_.(m), A(n))`` degreewise on a phi-window.

    Returns ``{"cohomology": {i: {degree: dim}}, "totals": [...], ...}`` for
    ``i = 0..max_stage``; the window is the set of internal degrees ``v``
    with ``|phi(v) - phi(m - n)| <= window * p2``.
    """
    w = m.weight
    res = PeriodicResolution(w, m, field)
    duals = {s: res.d(s).transpose(n) for s in range(1, max_stage + 2)}
    centre = phi(m - n)
    degrees = enumerate_window(centre - window * w.p2, centre + window * w.p2, w)
    coh: Dict[int, Dict[GradeElement, int]] = {i: {} for i in range(max_stage + 1)}
    for v in degrees:
        for s in range(max_stage + 1):
            hom_dim = sum(max((n - u + v).m + 1, 0) for u in res.shifts(s))
            if hom_dim == 0:
                continue
            r_in = linalg.rank(duals[s].graded_piece_matrix(v), field) if s >= 1 else 0
            r_out = linalg.rank(duals[s + 1].graded_piece_matrix(v), field)
            h = hom_dim - r_in - r_out
            if h:
                coh[s][v] = h
    return {
        "source_twist": m,
        "target_twist": n,
        "max_stage": max_stage,
        "window": (centre - window * w.p2, centre + window * w.p2),
        "degrees_scanned": len(degrees),
        "cohomology": coh,
        "totals": [sum(coh[s].values()) for s in range(max_stage + 1)],
    }


def gorenstein_check(w, max_stage: int = DEFAULT_MAX_STAGE, window: int = DEFAULT_WINDOW,
                     field: FieldSpec = QQ) -> dict:
    """``RHom(k, A)`` is ``k(x + y + z - c)[-2]``: one dimension, in
    cohomological degree 2 and internal degree ``-(x + y + z - c)``."""
    w = Weight.of(w)
    r = rhom_into_free(w.zero, w.zero, max_stage, window, field)
    omega = w.x + w.y + w.z - w.c
    deg2 = r["cohomology"][2]
    ok = (
        r["totals"][0] == 0
        and r["totals"][1] == 0
        and r["totals"][2] == 1
        and deg2.get(-omega) == 1
        and all(t == 0 for t in r["totals"][3:])
    )
    return {
        "weight": w.to_json(),
        "totals": r["totals"],
        "degree2_support": [v.to_json() for v in deg2],
        "expected_internal_degree": (-omega).to_json(),
        "phi_of_twist": str(phi(omega)),
        "window": [str(r["window"][0]), str(r["window"][1])],
        "verdict": "PASS" if ok else "FAIL",
    }

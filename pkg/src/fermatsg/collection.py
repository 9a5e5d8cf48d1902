"""The collection ``(k(n))_{n in I}``: order, membership, exceptionality,
comparison with the triple tensor of directed categories, Gram matrices and
K0 bookkeeping.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import linalg
from .dgcat import DGCategory, directed_category, euler_matrix, tensor_all
from .fields import QQ, FieldSpec
from .grading import (
    GradeElement,
    Weight,
    box_coordinates,
    enumerate_window,
    in_L_plus,
    phi,
)
from .homalg import (
    DEFAULT_MAX_STAGE,
    DEFAULT_WINDOW,
    ExtClass,
    YonedaEngine,
    ext_dim,
    ext_summands,
    singularity_euler_form,
    vanishing_criteria,
)


# --- the index set -------------------------------------------------------------

@dataclass(frozen=True)
class IndexSet:
    weight: Weight
    elements: Tuple[GradeElement, ...]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def index(self, n: GradeElement) -> int:
        return self.elements.index(n)

    def __contains__(self, n):
        return n in self.elements

    def coordinates(self) -> List[Tuple[int, int, int]]:
        return [in_box(n) for n in self.elements]

    def to_json(self):
        return {"weight": self.weight.to_json(), "elements": [n.to_json() for n in self.elements]}


def in_box(n: GradeElement) -> Optional[Tuple[int, int, int]]:
    """Box coordinates ``(a, b, c)`` of ``n``, or ``None`` if ``n`` is not in I."""
    coords = box_coordinates(n)
    if coords is None:
        return None
    if any(t < -p + 2 for t, p in zip(coords, n.weight)):
        return None
    return coords


def index_set(w) -> IndexSet:
    """I ordered by descending ``a + b + c``, ties lexicographic on ``(a, b, c)``."""
    w = Weight.of(w)
    coords = itertools.product(*(range(-p + 2, 1) for p in w))
    coords = sorted(coords, key=lambda t: (-sum(t), t))
    return IndexSet(w, tuple(w.x * a + w.y * b + w.z * c for a, b, c in coords))


def mu(n: GradeElement) -> Tuple[int, int, int]:
    """The object ``L_{1-a} (x) L_{1-b} (x) L_{1-c}`` of the triple tensor."""
    a, b, c = in_box(n)
    return (1 - a, 1 - b, 1 - c)


def triple_tensor_collection(w, field: FieldSpec = QQ) -> Tuple[DGCategory, List[Tuple[int, int, int]]]:
    w = Weight.of(w)
    C = tensor_all(directed_category(p, field) for p in w)
    return C, [mu(n) for n in index_set(w)]


# --- membership in T -------------------------------------------------------------

def membership_in_T(n: GradeElement, window: int = DEFAULT_WINDOW) -> dict:
    """Evaluate both vanishing criteria with ``k(n)`` as the source.

    ``RHom(k(n), k(m)) = 0`` is needed for ``m`` in L+ and
    ``RHom(k(n), A(m)) = 0`` for ``m`` in L-.  The first criterion can only
    fail when ``phi(m) <= phi(n)``, and L+ is bounded below in ``phi``; the
    second can only fail at one point.  The report says whether the window
    covers both, i.e. whether the finite check is exhaustive.
    """
    w = n.weight
    lo, hi = phi(n) - window * w.p2, phi(n) + window * w.p2
    failures = []
    checked_plus = checked_minus = 0
    for m in enumerate_window(lo, hi, w):
        first, second = vanishing_criteria(n, m)
        if in_L_plus(m):
            checked_plus += 1
            if not first:
                failures.append({"m": m.to_json(), "set": "L+", "criterion": "span"})
        else:
            checked_minus += 1
            if not second:
                failures.append({"m": m.to_json(), "set": "L-", "criterion": "free"})
    # smallest phi on L+ is phi(-2c + x + y + z)
    lplus_floor = phi(-2 * w.c + w.x + w.y + w.z)
    special = n + w.c - w.x - w.y - w.z
    exhaustive = lo <= lplus_floor and lo <= phi(special) <= hi
    return {
        "n": n.to_json(),
        "in_I": in_box(n) is not None,
        "window": [str(lo), str(hi)],
        "checked_L_plus": checked_plus,
        "checked_L_minus": checked_minus,
        "exhaustive": exhaustive,
        "failures": failures,
        "verdict": "PASS" if not failures else "FAIL",
    }


# --- exceptional collection ------------------------------------------------------

def verify_exceptional(w, max_degree: int = DEFAULT_MAX_STAGE) -> dict:
    """Endomorphisms ``k`` in degree 0, nothing backwards, in degrees ``<= max_degree``."""
    I = index_set(w)
    failures = []
    for i, ni in enumerate(I):
        dims = [ext_dim(ni, ni, d) for d in range(max_degree + 1)]
        if dims[0] != 1 or any(dims[1:]):
            failures.append({"pair": [i, i], "dims": dims, "reason": "not exceptional"})
        for j in range(i):
            nj = I[j]
            dims = [ext_dim(ni, nj, d) for d in range(max_degree + 1)]
            if any(dims):
                failures.append({"pair": [i, j], "dims": dims, "reason": "backward morphism"})
    return {
        "weight": I.weight.to_json(),
        "objects": len(I),
        "max_degree": max_degree,
        "failures": failures,
        "verdict": "PASS" if not failures else "FAIL",
    }


# --- comparison with the triple tensor ---------------------------------------------

def _ext_basis(I: IndexSet, max_degree: int) -> Dict[Tuple[int, int], List[ExtClass]]:
    out = {}
    for i, ni in enumerate(I):
        for j, nj in enumerate(I):
            classes = []
            for d in range(max_degree + 1):
                for r in ext_summands(ni, nj, d):
                    classes.append(ExtClass(ni, nj, d, ((r, 1),)))
            if classes:
                out[(i, j)] = classes
    return out


def comparison_isomorphism(w, field: FieldSpec = QQ, max_degree: int = DEFAULT_MAX_STAGE) -> dict:
    """Match the Ext algebra of the collection with the triple tensor.

    Identities and degree-1 generators are sent to the basis elements of
    the tensor with scale 1.  Every other basis class gets its scale from
    one chosen factorization ``zeta = xi . eta``; afterwards every
    composition of basis classes is compared with the tensor composition.
    """
    w = Weight.of(w)
    I = index_set(w)
    C, objs = triple_tensor_collection(w, field)
    engine = YonedaEngine(w, field)
    ext = _ext_basis(I, max_degree)
    failures = []

    # object bijection and dimensions
    if len(set(objs)) != len(objs) or set(objs) != set(C.objects):
        failures.append({"reason": "object bijection fails"})
    for i in range(len(I)):
        for j in range(len(I)):
            e_dims: Dict[int, int] = {}
            for cl in ext.get((i, j), []):
                e_dims[cl.degree] = e_dims.get(cl.degree, 0) + 1
            t_dims = C.dims_by_degree(objs[i], objs[j])
            if e_dims != t_dims:
                failures.append({"reason": "dimension mismatch", "pair": [i, j], "ext": e_dims, "tensor": t_dims})
    if failures:
        return {"weight": w.to_json(), "failures": failures, "verdict": "FAIL", "scalings": []}

    # every nonzero hom is one-dimensional on both sides
    scale: Dict[Tuple[int, int], object] = {}
    for (i, j), classes in ext.items():
        if classes[0].degree <= 1:
            scale[(i, j)] = field(1)

    def yoneda_coeff(i, j, k):
        prod = engine.compose(ext[(i, j)][0], ext[(j, k)][0])
        return prod.coefficient_of(ext[(i, k)][0].index) if (i, k) in ext else (0 if prod.is_zero() else None)

    def tensor_coeff(i, j, k):
        # compose(eta_tensor, xi_tensor): first xi then eta
        r = C.compose(objs[i], objs[j], objs[k], {0: 1}, {0: 1})
        return r.get(0, 0)

    # determine remaining scales by degree
    for deg in range(2, max_degree + 1):
        for (i, k), classes in sorted(ext.items()):
            if classes[0].degree != deg:
                continue
            found = False
            for j in range(len(I)):
                if (i, j) in ext and (j, k) in ext and (i, j) in scale and (j, k) in scale:
                    if ext[(i, j)][0].degree == 0 or ext[(j, k)][0].degree == 0:
                        continue
                    c = yoneda_coeff(i, j, k)
                    s = tensor_coeff(i, j, k)
                    if c and s:
                        scale[(i, k)] = field.div(field(scale[(i, j)] * scale[(j, k)] * s), c)
                        found = True
                        break
            if not found:
                failures.append({"reason": "no factorization fixes the scale", "pair": [i, k]})

    # full check of the composition table
    checked = 0
    for (i, j) in sorted(ext):
        for k in range(len(I)):
            if (j, k) not in ext:
                continue
            checked += 1
            prod = engine.compose(ext[(i, j)][0], ext[(j, k)][0])
            t = C.compose(objs[i], objs[j], objs[k], {0: 1}, {0: 1})
            lhs = field(scale[(i, j)] * scale[(j, k)]) if (i, j) in scale and (j, k) in scale else None
            if (i, k) in ext:
                c = prod.coefficient_of(ext[(i, k)][0].index)
                ok = lhs is not None and (i, k) in scale and field(lhs * t.get(0, 0)) == field(scale[(i, k)] * c)
            else:
                ok = prod.is_zero() and not t
            if not ok:
                failures.append({"reason": "composition mismatch", "triple": [i, j, k]})
    scalings = [
        {"source": I[i].to_json(), "target": I[j].to_json(), "degree": ext[(i, j)][0].degree,
         "scale": str(scale[(i, j)])}
        for (i, j) in sorted(scale)
    ]
    return {
        "weight": w.to_json(),
        "objects": len(I),
        "compositions_checked": checked,
        "scalings": scalings,
        "all_scalings_pm1": all(v in (field(1), field(-1)) for v in scale.values()),
        "failures": failures,
        "verdict": "PASS" if not failures else "FAIL",
    }


# --- Euler / Gram ----------------------------------------------------------------

def gram_matrix(w, top_degree: int = 3) -> np.ndarray:
    """``sum_{d <= top_degree} (-1)^d dim Ext^d(k(n_i), k(n_j))`` over ordered I."""
    I = index_set(w)
    G = np.zeros((len(I), len(I)), dtype=np.int64)
    for i, ni in enumerate(I):
        for j, nj in enumerate(I):
            G[i, j] = sum((-1) ** d * ext_dim(ni, nj, d) for d in range(top_degree + 1))
    return G


def bidiagonal(p: int) -> np.ndarray:
    """Identity plus ``-1`` on the superdiagonal, size ``p - 1``."""
    n = p - 1
    return np.eye(n, dtype=np.int64) - np.eye(n, k=1, dtype=np.int64)


def kronecker_check(w) -> dict:
    w = Weight.of(w)
    G = gram_matrix(w)
    K = np.kron(bidiagonal(w.p0), np.kron(bidiagonal(w.p1), bidiagonal(w.p2)))
    C, objs = triple_tensor_collection(w)
    pos = {X: i for i, X in enumerate(C.objects)}
    perm = [pos[X] for X in objs]
    K_perm = K[np.ix_(perm, perm)]
    E = euler_matrix(C, objs)
    det = linalg.determinant(G.astype(object))
    upper_unipotent = bool(np.all(np.diag(G) == 1) and np.all(np.tril(G, -1) == 0))
    ok = bool(np.array_equal(G, K_perm) and np.array_equal(G, E)) and det == 1 and upper_unipotent
    return {
        "weight": w.to_json(),
        "size": int(G.shape[0]),
        "gram_equals_kronecker": bool(np.array_equal(G, K_perm)),
        "gram_equals_tensor_euler": bool(np.array_equal(G, E)),
        "upper_unipotent": upper_unipotent,
        "determinant": int(det),
        "verdict": "PASS" if ok else "FAIL",
    }


# --- K0 bookkeeping ------------------------------------------------------------

class ReductionError(RuntimeError):
    pass


@dataclass
class K0Vector:
    """Integer coefficients over I."""

    weight: Weight
    coeffs: Dict[GradeElement, int] = dc_field(default_factory=dict)
    steps: int = 0

    def coefficient(self, n: GradeElement) -> int:
        return self.coeffs.get(n, 0)

    def as_array(self, I: Optional[IndexSet] = None) -> np.ndarray:
        I = I or index_set(self.weight)
        return np.array([self.coeffs.get(n, 0) for n in I], dtype=np.int64)

    def __eq__(self, other):
        return isinstance(other, K0Vector) and self.weight == other.weight and self.coeffs == other.coeffs

    def to_json(self):
        I = index_set(self.weight)
        return {
            "weight": self.weight.to_json(),
            "coefficients": [[n.to_json(), self.coeffs[n]] for n in I if self.coeffs.get(n)],
            "steps": self.steps,
        }


def _distance(t: int, p: int) -> int:
    if t > 0:
        return t
    if t < -(p - 2):
        return -(p - 2) - t
    return 0


def phi_distance(m: GradeElement) -> Fraction:
    """Distance from ``phi(m)`` to the interval spanned by ``phi`` on I."""
    I = index_set(m.weight)
    vals = [phi(n) for n in I]
    lo, hi = min(vals), max(vals)
    v = phi(m)
    return max(lo - v, v - hi, Fraction(0))


def step_bound(m: GradeElement) -> int:
    w = m.weight
    return (w.p0 + w.p1 + w.p2) * (1 + math.ceil(phi_distance(m)))


def integer_lift(m: GradeElement) -> Tuple[int, int, int]:
    """``(a, b, c)`` with ``m = a x + b y + c z``, closest to the box.

    The ``c``-multiple of the normal form is split over the three
    coordinates so that the summed distance to the box is minimal.
    """
    w = m.weight
    span = range(-abs(m.m) - 1, abs(m.m) + 2)
    best = None
    for i in span:
        for j in span:
            t = (m.a + i * w.p0, m.b + j * w.p1, m.c + (m.m - i - j) * w.p2)
            d = sum(_distance(t[k], w[k]) for k in range(3))
            if best is None or (d, t) < best[0]:
                best = ((d, t), t)
    return best[1]


def reduce_class(m: GradeElement, guard: Optional[int] = None) -> K0Vector:
    """Write ``[k(m)]`` over I modulo classes of perfect complexes.

    The filtrations of ``k[v]/(v^p)(n)`` give
    ``sum_{i<p} [k(n - i v)] = 0`` for ``v`` in ``{x, y, z}``; a term with a
    coordinate above the box is traded for its ``p - 1`` lower neighbours
    and one below the box for its ``p - 1`` upper neighbours.  Terms are
    processed farthest-first, so every lattice point is expanded once.
    """
    w = m.weight
    ps = tuple(w)
    start = integer_lift(m)
    guard = guard if guard is not None else 100 * step_bound(m) + 1000
    pending: Dict[Tuple[int, int, int], int] = {start: 1}
    done: Dict[Tuple[int, int, int], int] = {}
    steps = 0
    while pending:
        key = max(pending, key=lambda t: (sum(_distance(t[k], ps[k]) for k in range(3)), t))
        coeff = pending.pop(key)
        if coeff == 0:
            continue
        axis = next((k for k in range(3) if _distance(key[k], ps[k])), None)
        if axis is None:
            done[key] = done.get(key, 0) + coeff
            continue
        steps += 1
        if steps > guard:
            raise ReductionError(f"reduction of {m} exceeded {guard} steps")
        p = ps[axis]
        direction = -1 if key[axis] > 0 else 1
        for j in range(1, p):
            nk = list(key)
            nk[axis] += direction * j
            nk = tuple(nk)
            pending[nk] = pending.get(nk, 0) - coeff
    coeffs = {}
    for (a, b, c), v in done.items():
        if v:
            coeffs[w.x * a + w.y * b + w.z * c] = v
    return K0Vector(w, coeffs, steps)


def pairing_check(w, samples: int = 50, seed: int = 0, window: int = DEFAULT_WINDOW) -> dict:
    """``chi(k(n_i), k(m)) = (G r(m))_i`` for random ``m`` in the window."""
    w = Weight.of(w)
    I = index_set(w)
    G = np.array([[singularity_euler_form(a, b) for b in I] for a in I], dtype=np.int64)
    gram_ok = bool(np.array_equal(G, gram_matrix(w)))
    pool = enumerate_window(-window * w.p2, window * w.p2, w)
    rng = random.Random(seed)
    picks = [rng.choice(pool) for _ in range(samples)]
    failures = []
    max_ratio = Fraction(0)
    for m in picks:
        r = reduce_class(m)
        lhs = np.array([singularity_euler_form(n, m) for n in I], dtype=np.int64)
        rhs = G @ r.as_array(I)
        if not np.array_equal(lhs, rhs):
            failures.append({"m": m.to_json(), "direct": lhs.tolist(), "via_reduction": rhs.tolist()})
        if r.steps > step_bound(m):
            failures.append({"m": m.to_json(), "steps": r.steps, "bound": step_bound(m)})
        max_ratio = max(max_ratio, Fraction(r.steps, step_bound(m)))
    return {
        "weight": w.to_json(),
        "samples": samples,
        "seed": seed,
        "gram_equals_sg_euler": gram_ok,
        "max_steps_over_bound": str(max_ratio),
        "failures": failures,
        "verdict": "PASS" if not failures and gram_ok else "FAIL",
    }

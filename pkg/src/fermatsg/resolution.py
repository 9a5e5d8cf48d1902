"""The eventually 2-periodic free resolution of the simple module k(n).

Stage shifts (for the untwisted resolution of ``k = A/(x, y, z)``)::

    F0 = A
    F1 = A(-z) + A(-y) + A(-x)
    F2 = A(-y-z) + A(-x-z) + A(-x-y) + A(-c)
    F3 = A(-x-y-z) + A(-c-z) + A(-c-y) + A(-c-x)
    F4 = A(-c-y-z) + A(-c-x-z) + A(-c-x-y) + A(-2c)

and for ``s >= 3``: ``F_{s+2} = F_s(-c)`` with ``d_{s+2} = d_s`` as entry
matrices.  The tail ``(d3, d4)`` is a matrix factorization of the Fermat
polynomial, which :func:`check_matrix_factorization` verifies in the
ambient polynomial ring.  Twisting by ``n`` adds ``n`` to every shift.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import RingElement
from .fields import QQ, FieldSpec
from .gmod import ChainComplex, FreeModule, GradedMap, compose, homology_dims
from .grading import GradeElement, Weight, enumerate_window, phi

# An entry is None (zero) or (sign, ex, ey, ez) where exponents may refer to
# the weight through the tokens "p0-1", "p1-1", "p2-1".
_X, _Y, _Z = ("e", 1, 0, 0), ("e", 0, 1, 0), ("e", 0, 0, 1)
_XP, _YP, _ZP = ("e", "p0-1", 0, 0), ("e", 0, "p1-1", 0), ("e", 0, 0, "p2-1")


def _neg(t):
    return ("-",) + t[1:]


_D1 = [[_Z, _Y, _X]]
_D2 = [
    [_neg(_Y), _neg(_X), None, _ZP],
    [_Z, None, _neg(_X), _YP],
    [None, _Z, _Y, _XP],
]
_D3 = [
    [_X, _neg(_YP), _ZP, None],
    [_neg(_Y), _neg(_XP), None, _ZP],
    [_Z, None, _neg(_XP), _YP],
    [None, _Z, _Y, _X],
]
_D4 = [
    [_XP, _neg(_YP), _ZP, None],
    [_neg(_Y), _neg(_X), None, _ZP],
    [_Z, None, _neg(_X), _YP],
    [None, _Z, _Y, _XP],
]
ENTRY_TABLES = {1: _D1, 2: _D2, 3: _D3, 4: _D4}


def _exponent(tok, w: Weight) -> int:
    if isinstance(tok, int):
        return tok
    return {"p0-1": w.p0 - 1, "p1-1": w.p1 - 1, "p2-1": w.p2 - 1}[tok]


def entry_exponents(entry, w: Weight) -> Optional[Tuple[int, int, int, int]]:
    """``(sign, ex, ey, ez)`` for a table entry, or None for zero."""
    if entry is None:
        return None
    sign = -1 if entry[0] == "-" else 1
    return (sign,) + tuple(_exponent(t, w) for t in entry[1:])


def base_shifts(w: Weight, s: int) -> List[GradeElement]:
    """Shifts of ``F_s`` for the untwisted resolution of ``k``."""
    x, y, z, c = w.x, w.y, w.z, w.c
    if s < 0:
        return []
    if s == 0:
        return [w.zero]
    if s == 1:
        return [-z, -y, -x]
    if s == 2:
        return [-y - z, -x - z, -x - y, -c]
    if s % 2 == 1:
        base = [-x - y - z, -c - z, -c - y, -c - x]
        k = (s - 3) // 2
    else:
        base = [-c - y - z, -c - x - z, -c - x - y, -2 * c]
        k = (s - 4) // 2
    return [b - k * c for b in base]


def table_for_stage(s: int):
    if s < 1:
        raise ValueError("differentials start at d_1")
    if s <= 2:
        return ENTRY_TABLES[s]
    return ENTRY_TABLES[3] if s % 2 == 1 else ENTRY_TABLES[4]


def _ring_matrix(table, w: Weight, field: FieldSpec):
    out = []
    for row in table:
        r = []
        for e in row:
            ex = entry_exponents(e, w)
            if ex is None:
                r.append(RingElement.zero(w, field))
            else:
                r.append(RingElement.monomial(ex[1], ex[2], ex[3], w, field, coeff=ex[0]))
        out.append(r)
    return out


class PeriodicResolution:
    """Lazily constructed resolution ``F_.(n) -> k(n)``."""

    def __init__(self, weight, twist: Optional[GradeElement] = None, field: FieldSpec = QQ):
        self.weight = Weight.of(weight)
        self.twist = twist if twist is not None else self.weight.zero
        self.field = field
        self._modules: Dict[int, FreeModule] = {}
        self._maps: Dict[int, GradedMap] = {}

    def shifts(self, s: int) -> List[GradeElement]:
        return [u + self.twist for u in base_shifts(self.weight, s)]

    def module(self, s: int) -> FreeModule:
        if s not in self._modules:
            self._modules[s] = FreeModule(self.shifts(s), self.weight)
        return self._modules[s]

    def d(self, s: int) -> GradedMap:
        """``d_s: F_s -> F_{s-1}``."""
        if s not in self._maps:
            ents = _ring_matrix(table_for_stage(s), self.weight, self.field)
            self._maps[s] = GradedMap(self.module(s), self.module(s - 1), ents, self.field)
        return self._maps[s]

    def complex(self, stages: int) -> ChainComplex:
        if stages < 1:
            raise ValueError("stages must be >= 1")
        return ChainComplex([self.module(s) for s in range(stages + 1)], [self.d(s) for s in range(1, stages + 1)])

    def to_json(self, stages: int):
        return {
            "weight": self.weight.to_json(),
            "twist": self.twist.to_json(),
            "field": self.field.to_json(),
            "stages": [
                {
                    "stage": s,
                    "shifts": self.module(s).to_json(),
                    "differential": None if s == 0 else [[e.to_json() for e in row] for row in self.d(s).entries],
                }
                for s in range(stages + 1)
            ],
        }

    def to_tex(self, stages: int) -> str:
        lines = []
        for s in range(stages + 1):
            mod = " \\oplus ".join("A(%s)" % _tex_grade(u) for u in self.shifts(s))
            lines.append("F_{%d} = %s" % (s, mod))
        for s in range(1, stages + 1):
            lines.append("d_{%d} = %s" % (s, self.d(s).to_tex()))
        return "\n\n".join(lines) + "\n"


def _tex_grade(u: GradeElement) -> str:
    w = u.weight
    # prefer the readable form a x + b y + c z + m c with non-positive letters
    coords = [u.a, u.b, u.c]
    m = u.m
    for i, p in enumerate(w):
        if coords[i] and m < 0:
            coords[i] -= p
            m += 1
    parts = []
    for k, sym in zip(coords + [m], ["\\vec{x}", "\\vec{y}", "\\vec{z}", "\\vec{c}"]):
        if k == 0:
            continue
        mag = "" if abs(k) == 1 else str(abs(k))
        parts.append(("-" if k < 0 else "+") + mag + sym)
    s = "".join(parts) or "0"
    return s[1:] if s.startswith("+") else s


def build_resolution(n: GradeElement, stages: int, field: FieldSpec = QQ) -> ChainComplex:
    """Truncation ``F_0 <- ... <- F_stages`` of the resolution of ``k(n)``."""
    return PeriodicResolution(n.weight, n, field).complex(stages)


def composition_failures(res: PeriodicResolution, stages: int) -> List[int]:
    """Indices ``i`` in ``1..stages-1`` with ``d_i o d_{i+1} != 0``."""
    return [i for i in range(1, stages) if not compose(res.d(i), res.d(i + 1)).is_zero()]


def exactness_window(n: GradeElement, multiplier: int = 3) -> List[GradeElement]:
    """Degrees ``u`` with ``0 <= phi(u + n) <= multiplier * p2``."""
    w = n.weight
    shift = phi(n)
    return enumerate_window(-shift, multiplier * w.p2 - shift, w)


def check_exactness(n: GradeElement, stages: int, multiplier: int = 3, field: FieldSpec = QQ) -> dict:
    """Degreewise homology of the truncated resolution on the window.

    Positions ``0..stages-1`` are checked (the top position is truncated):
    homology must be zero except a single dimension at position 0 in degree
    ``-n``, where the simple module ``k(n)`` lives.
    """
    res = PeriodicResolution(n.weight, n, field)
    C = res.complex(stages)
    failures = []
    window = exactness_window(n, multiplier)
    target = -n
    for u in window:
        h = homology_dims(C, u, field, check=False)[:stages]
        expect = [1 if (i == 0 and u == target) else 0 for i in range(stages)]
        if h != expect:
            failures.append({"degree": u.to_json(), "homology": h, "expected": expect})
    return {
        "weight": n.weight.to_json(),
        "twist": n.to_json(),
        "stages": stages,
        "window": {"phi_min": str(-phi(n)), "phi_max": str(multiplier * n.weight.p2 - phi(n)), "degrees": len(window)},
        "failures": failures,
        "verdict": "PASS" if not failures else "FAIL",
    }


def maximal_ideal_violations(res: PeriodicResolution, stages: int) -> List[Tuple[int, int, int]]:
    """Entries that are nonzero with non-positive phi-degree (should be none)."""
    bad = []
    for s in range(1, stages + 1):
        d = res.d(s)
        for i, row in enumerate(d.entries):
            for j, e in enumerate(row):
                if e.is_zero():
                    continue
                if phi(d.entry_degree(i, j)) <= 0 or e.constant_coefficient() != 0:
                    bad.append((s, i, j))
    return bad


# --- matrix factorization check in the ambient polynomial ring -------------

def _sympy_matrix(table, w: Weight):
    import sympy

    x, y, z = sympy.symbols("x y z")
    rows = []
    for row in table:
        r = []
        for e in row:
            ex = entry_exponents(e, w)
            r.append(0 if ex is None else ex[0] * x ** ex[1] * y ** ex[2] * z ** ex[3])
        rows.append(r)
    return sympy.Matrix(rows), (x, y, z)


def _diagonal_signs(product, f) -> Optional[List[int]]:
    import sympy

    n = product.shape[0]
    signs = []
    for i in range(n):
        for j in range(n):
            v = sympy.expand(product[i, j])
            if i != j:
                if v != 0:
                    return None
                continue
            if sympy.expand(v - f) == 0:
                signs.append(1)
            elif sympy.expand(v + f) == 0:
                signs.append(-1)
            else:
                return None
    return signs


def check_matrix_factorization(w) -> dict:
    """Whether ``d3 d4`` and ``d4 d3`` equal ``diag(eps) * f`` before reduction.

    Also records ``d1 d2`` and ``d2 d3`` over the polynomial ring, where the
    only allowed defect is a multiple of ``f`` (zero once the relation holds).
    """
    import sympy

    w = Weight.of(w)
    d3, (x, y, z) = _sympy_matrix(_D3, w)
    d4, _ = _sympy_matrix(_D4, w)
    f = x ** w.p0 + y ** w.p1 + z ** w.p2
    s34 = _diagonal_signs(d3 * d4, f)
    s43 = _diagonal_signs(d4 * d3, f)
    d1, _ = _sympy_matrix(_D1, w)
    d2, _ = _sympy_matrix(_D2, w)

    def _mod_f(M):
        return all(sympy.rem(sympy.expand(v), f, x) == 0 for v in M)

    report = {
        "weight": w.to_json(),
        "d3d4_signs": s34,
        "d4d3_signs": s43,
        "d3d4_is_factorization": s34 is not None,
        "d4d3_is_factorization": s43 is not None,
        "sign_adjustment_used": bool(s34 and any(s < 0 for s in s34)) or bool(s43 and any(s < 0 for s in s43)),
        "d1d2_zero_mod_f": _mod_f(d1 * d2),
        "d2d3_zero_mod_f": _mod_f(d2 * d3),
    }
    report["verdict"] = "PASS" if (s34 is not None and s43 is not None) else "FAIL"
    return report


# --- Koszul resolutions of A/(x), A/(x, y), ... ------------------------------

_VAR_INDEX = {"x": 0, "y": 1, "z": 2}


@dataclass
class PerfectnessCertificate:
    module: str
    complex: ChainComplex
    window: Tuple[str, str]
    failures: list = dc_field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.complex) - 1

    @property
    def is_perfect(self) -> bool:
        return not self.failures

    def to_json(self):
        return {
            "module": self.module,
            "length": self.length,
            "shifts": [m.to_json() for m in self.complex.modules],
            "window": list(self.window),
            "failures": self.failures,
            "verdict": "PASS" if self.is_perfect else "FAIL",
        }


def quotient_piece_dim(vars_killed: Sequence[str], u: GradeElement) -> int:
    """``dim (A/(vars))_u`` by counting a monomial basis of the quotient.

    With one variable left the quotient is ``k[v]/(v^{p_v})``; with two
    left, ``k[v1, v2]/(v1^{p1} + v2^{p2})`` has basis ``v1^i v2^j``,
    ``i < p_{v1}``.
    """
    w = u.weight
    rest = [v for v in "xyz" if v not in vars_killed]
    ps = {"x": w.p0, "y": w.p1, "z": w.p2}
    if len(rest) == 1:
        v = rest[0]
        cand = range(ps[v])
        return sum(1 for e in cand if _mono_degree(w, {v: e}) == u)
    v1, v2 = rest
    count = 0
    # bound the second exponent by the phi-degree of u
    gen2 = {"x": w.x, "y": w.y, "z": w.z}[v2]
    top = int(phi(u) / phi(gen2)) + 1 if phi(u) >= 0 else -1
    for i in range(ps[v1]):
        for j in range(0, top + 1):
            if _mono_degree(w, {v1: i, v2: j}) == u:
                count += 1
    return count


def _mono_degree(w: Weight, exps) -> GradeElement:
    return w.element(exps.get("x", 0), exps.get("y", 0), exps.get("z", 0), 0)


def koszul_resolution(vars_killed: Sequence[str], n: Optional[GradeElement] = None, weight=None,
                      multiplier: int = 3, field: FieldSpec = QQ) -> PerfectnessCertificate:
    """Koszul complex on one or two of the variables, certified exact.

    ``{x}`` gives ``0 -> A(n-x) -> A(n) -> A/(x)(n) -> 0``; ``{x, y}`` gives
    ``0 -> A(n-x-y) -> A(n-x) + A(n-y) -> A(n)``.
    """
    vars_killed = list(vars_killed)
    if not 1 <= len(vars_killed) <= 2 or len(set(vars_killed)) != len(vars_killed):
        raise ValueError("choose one or two distinct variables among x, y, z")
    if any(v not in _VAR_INDEX for v in vars_killed):
        raise ValueError("variables must be among x, y, z")
    if n is None:
        n = Weight.of(weight).zero
    w = n.weight
    gens = {"x": w.x, "y": w.y, "z": w.z}
    one = lambda v: RingElement.monomial(*[(1 if k == _VAR_INDEX[v] else 0) for k in range(3)], w, field)
    F0 = FreeModule([n], w)
    if len(vars_killed) == 1:
        (v,) = vars_killed
        F1 = FreeModule([n - gens[v]], w)
        C = ChainComplex([F0, F1], [GradedMap(F1, F0, [[one(v)]], field)])
    else:
        v1, v2 = vars_killed
        F1 = FreeModule([n - gens[v1], n - gens[v2]], w)
        F2 = FreeModule([n - gens[v1] - gens[v2]], w)
        d1 = GradedMap(F1, F0, [[one(v1), one(v2)]], field)
        d2 = GradedMap(F2, F1, [[-one(v2)], [one(v1)]], field)
        C = ChainComplex([F0, F1, F2], [d1, d2])
    lo, hi = -phi(n), multiplier * w.p2 - phi(n)
    failures = []
    for u in enumerate_window(lo, hi, w):
        h = homology_dims(C, u, field)
        expect = [quotient_piece_dim(vars_killed, u + n)] + [0] * (len(h) - 1)
        if h != expect:
            failures.append({"degree": u.to_json(), "homology": h, "expected": expect})
    name = "A/(%s)" % ",".join(vars_killed)
    if n != w.zero:
        name += "(%s)" % n
    return PerfectnessCertificate(name, C, (str(lo), str(hi)), failures)

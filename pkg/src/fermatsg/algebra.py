"""Exact arithmetic in A(p) = k[x, y, z] / (x^p0 + y^p1 + z^p2).

The reduced monomial basis consists of ``x^i y^j z^k`` with ``i < p0``;
reduction rewrites ``x^p0 -> -y^p1 - z^p2`` and nothing else.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple

from .fields import QQ, FieldSpec
from .grading import GradeElement, Weight, normalize


class Monomial(NamedTuple):
    ex: int
    ey: int
    ez: int

    def degree(self, w: Weight) -> GradeElement:
        return normalize((self.ex, self.ey, self.ez, 0), w)

    def is_reduced(self, w: Weight) -> bool:
        return self.ex < w.p0

    def __mul__(self, other):  # type: ignore[override]
        return Monomial(self.ex + other.ex, self.ey + other.ey, self.ez + other.ez)

    def __str__(self):
        parts = []
        for e, v in zip(self, "xyz"):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append("%s^%d" % (v, e))
        return "*".join(parts) or "1"


ONE = Monomial(0, 0, 0)


def _reduce_terms(terms: Dict[Monomial, object], w: Weight, field: FieldSpec) -> Dict[Monomial, object]:
    out: Dict[Monomial, object] = {}
    stack = list(terms.items())
    while stack:
        mon, coeff = stack.pop()
        if coeff == 0:
            continue
        if mon.ex >= w.p0:
            ex = mon.ex - w.p0
            stack.append((Monomial(ex, mon.ey + w.p1, mon.ez), field(-coeff)))
            stack.append((Monomial(ex, mon.ey, mon.ez + w.p2), field(-coeff)))
            continue
        v = field(out.get(mon, 0) + coeff)
        if v == 0:
            out.pop(mon, None)
        else:
            out[mon] = v
    return out


class RingElement:
    """An element of A(p) as a map from reduced monomials to nonzero scalars."""

    __slots__ = ("terms", "weight", "field", "_degree")

    def __init__(self, terms, weight, field: FieldSpec = QQ, *, reduced: bool = False):
        self.weight = Weight.of(weight)
        self.field = field
        if reduced:
            self.terms = {Monomial(*m): field(c) for m, c in dict(terms).items() if field(c) != 0}
        else:
            raw = {}
            for m, c in dict(terms).items():
                m = Monomial(*m)
                raw[m] = raw.get(m, 0) + c
            self.terms = _reduce_terms(raw, self.weight, field)
        self._degree = None

    # constructors
    @classmethod
    def zero(cls, weight, field: FieldSpec = QQ) -> "RingElement":
        return cls({}, weight, field, reduced=True)

    @classmethod
    def one(cls, weight, field: FieldSpec = QQ) -> "RingElement":
        return cls({ONE: 1}, weight, field, reduced=True)

    @classmethod
    def monomial(cls, ex, ey, ez, weight, field: FieldSpec = QQ, coeff=1) -> "RingElement":
        return cls({Monomial(ex, ey, ez): coeff}, weight, field)

    @classmethod
    def constant(cls, value, weight, field: FieldSpec = QQ) -> "RingElement":
        return cls({ONE: value}, weight, field)

    # structure
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> Optional[GradeElement]:
        """The common L-degree of all terms (the homogeneity certificate).

        ``None`` for zero (homogeneous of every degree) and for
        inhomogeneous elements; use :meth:`is_homogeneous` to tell them apart.
        """
        if self._degree is None and self.terms:
            degs = {m.degree(self.weight) for m in self.terms}
            self._degree = degs.pop() if len(degs) == 1 else False
        return self._degree or None

    def is_homogeneous(self) -> bool:
        return not self.terms or self.degree() is not None

    def coefficient(self, mon) -> object:
        return self.terms.get(Monomial(*mon), 0)

    def constant_coefficient(self):
        return self.terms.get(ONE, 0)

    def _compatible(self, other: "RingElement"):
        if self.weight != other.weight or self.field != other.field:
            raise ValueError("ring elements over different weights or fields")

    def _coerce(self, other):
        if isinstance(other, RingElement):
            self._compatible(other)
            return other
        return RingElement.constant(other, self.weight, self.field)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = self.field(terms.get(m, 0) + c)
            if v == 0:
                terms.pop(m, None)
            else:
                terms[m] = v
        return RingElement(terms, self.weight, self.field, reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return RingElement({m: -c for m, c in self.terms.items()}, self.weight, self.field, reduced=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, s) -> "RingElement":
        s = self.field(s)
        if s == 0:
            return RingElement.zero(self.weight, self.field)
        return RingElement({m: c * s for m, c in self.terms.items()}, self.weight, self.field, reduced=True)

    def __mul__(self, other):
        if not isinstance(other, RingElement):
            return self.scale(other)
        self._compatible(other)
        if not self.terms or not other.terms:
            return RingElement.zero(self.weight, self.field)
        raw: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = Monomial(m1.ex + m2.ex, m1.ey + m2.ey, m1.ez + m2.ez)
                raw[m] = raw.get(m, 0) + c1 * c2
        return RingElement(_reduce_terms(raw, self.weight, self.field), self.weight, self.field, reduced=True)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        out = RingElement.one(self.weight, self.field)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.weight == other.weight and self.field == other.field and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.weight, frozenset(self.terms.items())))

    def __repr__(self):
        return "RingElement(%s)" % self

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            ms = str(m)
            if ms == "1":
                out.append(str(c))
            elif c == 1:
                out.append(ms)
            elif c == -1:
                out.append("-" + ms)
            else:
                out.append("%s*%s" % (c, ms))
        return " + ".join(out).replace("+ -", "- ")

    def to_tex(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            body = "".join(
                v if e == 1 else "%s^{%d}" % (v, e) for e, v in zip(m, "xyz") if e
            ) or "1"
            sign = "-" if c < 0 else "+"
            mag = abs(c) if self.field.is_rational else c
            coeff = "" if (mag == 1 and body != "1") else str(mag)
            out.append((sign, coeff + ("" if body == "1" and coeff else body)))
        s = "".join(("" if i == 0 and sg == "+" else sg) + t for i, (sg, t) in enumerate(out))
        return s

    def to_json(self) -> List[List[int]]:
        rows = []
        for m in sorted(self.terms):
            c = self.terms[m]
            num = getattr(c, "numerator", c)
            den = getattr(c, "denominator", 1)
            rows.append([m.ex, m.ey, m.ez, int(num), int(den)])
        return rows

    @classmethod
    def from_json(cls, data, weight, field: FieldSpec = QQ) -> "RingElement":
        from fractions import Fraction

        return cls({(e[0], e[1], e[2]): field(Fraction(e[3], e[4])) for e in data}, weight, field)


def reduce(mon, weight, field: FieldSpec = QQ) -> RingElement:
    """Rewrite a raw monomial in the reduced basis."""
    return RingElement({Monomial(*mon): 1}, weight, field)


def multiply(f: RingElement, g: RingElement) -> RingElement:
    return f * g


@lru_cache(maxsize=None)
def _piece(weight: Weight, a: int, b: int, c: int, m: int) -> Tuple[Monomial, ...]:
    # x-exponent is pinned to a; the carry m is split between y^p1 and z^p2
    if m < 0:
        return ()
    return tuple(Monomial(a, b + s * weight.p1, c + (m - s) * weight.p2) for s in range(m + 1))


def graded_piece_basis(u: GradeElement) -> Tuple[Monomial, ...]:
    """The reduced monomials of L-degree ``u``; ``len`` is ``dim A_u``."""
    return _piece(u.weight, u.a, u.b, u.c, u.m)


def graded_piece_dim(u: GradeElement) -> int:
    return max(u.m + 1, 0)


def variables(weight, field: FieldSpec = QQ) -> Tuple[RingElement, RingElement, RingElement]:
    w = Weight.of(weight)
    return (
        RingElement.monomial(1, 0, 0, w, field),
        RingElement.monomial(0, 1, 0, w, field),
        RingElement.monomial(0, 0, 1, w, field),
    )


def fermat_polynomial_terms(w: Weight) -> Dict[Monomial, int]:
    return {Monomial(w.p0, 0, 0): 1, Monomial(0, w.p1, 0): 1, Monomial(0, 0, w.p2): 1}


def expand_in_basis(f: RingElement, basis: Iterable[Monomial]) -> list:
    """Coordinates of a homogeneous ``f`` in the given monomial basis."""
    basis = list(basis)
    index = {m: i for i, m in enumerate(basis)}
    vec = [0] * len(basis)
    for m, c in f.terms.items():
        if m not in index:
            raise ValueError(f"monomial {m} is not in the supplied basis")
        vec[index[m]] = c
    return vec

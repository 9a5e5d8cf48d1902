"""The grading group L(p) of the Fermat algebra.

L(p) is generated by x, y, z, c subject to p0*x = p1*y = p2*z = c.  Every
element has a unique normal form ``a*x + b*y + c*z + m*c`` with
``0 <= a < p0``, ``0 <= b < p1``, ``0 <= c < p2`` and ``m`` an arbitrary
integer; equality of group elements is equality of normal forms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple


class WeightError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Weight:
    p0: int
    p1: int
    p2: int

    def __post_init__(self):
        for p in (self.p0, self.p1, self.p2):
            if not isinstance(p, int) or p < 2:
                raise WeightError(f"weights must be integers >= 2, got {self.as_tuple()}")

    @classmethod
    def of(cls, w) -> "Weight":
        if isinstance(w, Weight):
            return w
        p0, p1, p2 = (int(p) for p in w)
        return cls(p0, p1, p2)

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.p0, self.p1, self.p2)

    def __getitem__(self, i: int) -> int:
        return self.as_tuple()[i]

    def __iter__(self):
        return iter(self.as_tuple())

    def __str__(self):
        return "(%d,%d,%d)" % self.as_tuple()

    # distinguished elements
    @property
    def zero(self) -> "GradeElement":
        return GradeElement(0, 0, 0, 0, self)

    @property
    def x(self) -> "GradeElement":
        return normalize((1, 0, 0, 0), self)

    @property
    def y(self) -> "GradeElement":
        return normalize((0, 1, 0, 0), self)

    @property
    def z(self) -> "GradeElement":
        return normalize((0, 0, 1, 0), self)

    @property
    def c(self) -> "GradeElement":
        return GradeElement(0, 0, 0, 1, self)

    def generators(self) -> Tuple["GradeElement", "GradeElement", "GradeElement"]:
        return (self.x, self.y, self.z)

    def element(self, a: int = 0, b: int = 0, c: int = 0, m: int = 0) -> "GradeElement":
        return normalize((a, b, c, m), self)

    def to_json(self) -> List[int]:
        return list(self.as_tuple())


@dataclass(frozen=True)
class GradeElement:
    """An element of L(p), always stored in normal form.

    Construct through :func:`normalize` (or ``Weight.element``); the raw
    constructor does not reduce its arguments.
    """

    a: int
    b: int
    c: int
    m: int
    weight: Weight

    def __post_init__(self):
        w = self.weight
        if not (0 <= self.a < w.p0 and 0 <= self.b < w.p1 and 0 <= self.c < w.p2):
            raise ValueError(f"({self.a},{self.b},{self.c},{self.m}) is not a normal form for {w}")

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.m)

    def _check(self, other: "GradeElement"):
        if not isinstance(other, GradeElement):
            return NotImplemented
        if other.weight != self.weight:
            raise WeightError(f"weight mismatch: {self.weight} vs {other.weight}")
        return None

    def __add__(self, other: "GradeElement") -> "GradeElement":
        if self._check(other) is NotImplemented:
            return NotImplemented
        return add(self, other)

    def __sub__(self, other: "GradeElement") -> "GradeElement":
        if self._check(other) is NotImplemented:
            return NotImplemented
        return sub(self, other)

    def __neg__(self) -> "GradeElement":
        return neg(self)

    def __mul__(self, k: int) -> "GradeElement":
        if not isinstance(k, int):
            return NotImplemented
        return normalize((k * self.a, k * self.b, k * self.c, k * self.m), self.weight)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.a == self.b == self.c == self.m == 0

    def phi(self) -> Fraction:
        return phi(self)

    def __repr__(self):
        return "GradeElement(%d,%d,%d,%d; w=%s)" % (self.a, self.b, self.c, self.m, self.weight)

    def __str__(self):
        parts = []
        for coeff, sym in ((self.a, "x"), (self.b, "y"), (self.c, "z"), (self.m, "c")):
            if coeff == 0:
                continue
            parts.append(sym if coeff == 1 else "-" + sym if coeff == -1 else "%d%s" % (coeff, sym))
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def to_json(self) -> List[int]:
        return list(self.as_tuple())


def normalize(raw: Sequence[int], w) -> GradeElement:
    """Normal form of ``a*x + b*y + c*z + m*c``.

    >>> normalize((-1, 0, 0, 0), Weight(3, 3, 3)).as_tuple()
    (2, 0, 0, -1)
    """
    w = Weight.of(w)
    a, b, c, m = (int(t) for t in raw)
    qa, a = divmod(a, w.p0)
    qb, b = divmod(b, w.p1)
    qc, c = divmod(c, w.p2)
    return GradeElement(a, b, c, m + qa + qb + qc, w)


def from_json(data: Sequence[int], w) -> GradeElement:
    if len(data) != 4:
        raise ValueError("grade elements serialize as [a, b, c, m]")
    return normalize(data, w)


def add(u: GradeElement, v: GradeElement) -> GradeElement:
    if u.weight != v.weight:
        raise WeightError(f"weight mismatch: {u.weight} vs {v.weight}")
    return normalize((u.a + v.a, u.b + v.b, u.c + v.c, u.m + v.m), u.weight)


def neg(u: GradeElement) -> GradeElement:
    return normalize((-u.a, -u.b, -u.c, -u.m), u.weight)


def sub(u: GradeElement, v: GradeElement) -> GradeElement:
    return add(u, neg(v))


def raw_phi(raw: Sequence[int], w) -> Fraction:
    """phi of an unnormalized quadruple, evaluated term by term."""
    w = Weight.of(w)
    a, b, c, m = raw
    return Fraction(a * w.p2, w.p0) + Fraction(b * w.p2, w.p1) + c + m * w.p2


def phi(u: GradeElement) -> Fraction:
    """The additive map with phi(x) = p2/p0, phi(y) = p2/p1, phi(z) = 1."""
    return raw_phi(u.as_tuple(), u.weight)


def in_positive_span(u: GradeElement) -> bool:
    """Whether ``u`` is a non-negative integer combination of x, y, z.

    Writing ``u = a*x + b*y + c*z + m*c`` in normal form, ``m >= 0`` lets us
    absorb ``m*c = (m*p0)*x``; conversely any non-negative combination
    normalizes with a non-negative carry.
    """
    return u.m >= 0


def in_L_plus(u: GradeElement) -> bool:
    """Membership in ``{-2c + a*x + b*y + c*z : a, b, c >= 1}``."""
    w = u.weight
    shifted = u + 2 * w.c - w.x - w.y - w.z
    return in_positive_span(shifted)


def in_L_minus(u: GradeElement) -> bool:
    return not in_L_plus(u)


def _sort_key(u: GradeElement):
    return (phi(u), u.a, u.b, u.c)


def enumerate_window(phi_min, phi_max, w) -> List[GradeElement]:
    """All normal forms ``u`` with ``phi_min <= phi(u) <= phi_max``.

    Sorted by ``(phi, a, b, c)``.
    """
    w = Weight.of(w)
    lo, hi = Fraction(phi_min), Fraction(phi_max)
    out = []
    if lo > hi:
        return out
    for a in range(w.p0):
        for b in range(w.p1):
            for c in range(w.p2):
                base = raw_phi((a, b, c, 0), w)
                m_lo = math.ceil((lo - base) / w.p2)
                m_hi = math.floor((hi - base) / w.p2)
                for m in range(m_lo, m_hi + 1):
                    out.append(GradeElement(a, b, c, m, w))
    out.sort(key=_sort_key)
    return out


def box_coordinates(u: GradeElement) -> Tuple[int, int, int] | None:
    """Coordinates ``(a, b, c)`` with ``u = a*x + b*y + c*z`` and each
    coordinate in ``(-p_i, 0]``, if such a representation exists."""
    w = u.weight
    coords = []
    m = u.m
    for r, p in zip((u.a, u.b, u.c), w):
        if r == 0:
            coords.append(0)
        else:
            coords.append(r - p)
            m += 1
    if m != 0:
        return None
    return tuple(coords)


def sum_elements(elems: Iterable[GradeElement], w) -> GradeElement:
    total = Weight.of(w).zero
    for e in elems:
        total = total + e
    return total

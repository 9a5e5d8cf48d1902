"""Graded free A(p)-modules, degree-checked matrices, chain complexes.

Conventions.  The summand ``A(u)`` of a free module has its generator in
internal degree ``-u`` (``A(u)_v = A_{u+v}``).  A map entry in row ``i``
(target summand ``A(t_i)``) and column ``j`` (source summand ``A(s_j)``) is
homogeneous of degree ``t_i - s_j``.  A column vector of ring elements
represents an element of the target free module.
"""
from __future__ import annotations

import json
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg
from .algebra import Monomial, RingElement, expand_in_basis, graded_piece_basis
from .fields import QQ, FieldSpec
from .grading import GradeElement, Weight


class DegreeError(ValueError):
    pass


class FreeModule:
    """``A(u_1) + ... + A(u_r)``; summand order indexes matrix rows/columns."""

    __slots__ = ("shifts", "weight")

    def __init__(self, shifts: Sequence[GradeElement], weight=None):
        self.shifts = tuple(shifts)
        if weight is None:
            if not self.shifts:
                raise ValueError("an empty free module needs an explicit weight")
            weight = self.shifts[0].weight
        self.weight = Weight.of(weight)
        for s in self.shifts:
            if s.weight != self.weight:
                raise ValueError("shifts over different weights")

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def twist(self, t: GradeElement) -> "FreeModule":
        """``M(t)``: every summand ``A(u)`` becomes ``A(u + t)``."""
        return FreeModule([s + t for s in self.shifts], self.weight)

    def piece_basis(self, v: GradeElement) -> List[Tuple[int, Monomial]]:
        """Basis of the degree-``v`` piece: (summand, monomial) pairs."""
        return [(i, m) for i, s in enumerate(self.shifts) for m in graded_piece_basis(s + v)]

    def piece_dim(self, v: GradeElement) -> int:
        return sum(max((s + v).m + 1, 0) for s in self.shifts)

    def __eq__(self, other):
        return isinstance(other, FreeModule) and self.weight == other.weight and self.shifts == other.shifts

    def __hash__(self):
        return hash((self.weight, self.shifts))

    def __repr__(self):
        return "FreeModule(%s)" % ", ".join("A(%s)" % s for s in self.shifts)

    def to_json(self):
        return [s.to_json() for s in self.shifts]


class GradedMap:
    """A degree-checked matrix of ring elements between free modules."""

    def __init__(self, source: FreeModule, target: FreeModule, entries, field: FieldSpec = QQ, *, check=True):
        self.source = source
        self.target = target
        self.field = field
        w = source.weight
        rows = []
        for i in range(target.rank):
            row = []
            for j in range(source.rank):
                e = entries[i][j]
                if not isinstance(e, RingElement):
                    e = RingElement.constant(e, w, field)
                row.append(e)
            rows.append(row)
        self.entries = rows
        self._pieces: Dict[GradeElement, np.ndarray] = {}
        if check:
            self.check_degrees()

    @classmethod
    def zero(cls, source: FreeModule, target: FreeModule, field: FieldSpec = QQ) -> "GradedMap":
        z = RingElement.zero(source.weight, field)
        return cls(source, target, [[z] * source.rank for _ in range(target.rank)], field, check=False)

    @classmethod
    def identity(cls, module: FreeModule, field: FieldSpec = QQ) -> "GradedMap":
        w = module.weight
        ents = [
            [RingElement.one(w, field) if i == j else RingElement.zero(w, field) for j in range(module.rank)]
            for i in range(module.rank)
        ]
        return cls(module, module, ents, field, check=False)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.target.rank, self.source.rank)

    def entry_degree(self, i: int, j: int) -> GradeElement:
        return self.target.shifts[i] - self.source.shifts[j]

    def check_degrees(self):
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                if e.is_zero():
                    continue
                want = self.entry_degree(i, j)
                got = e.degree()
                if got != want:
                    raise DegreeError(f"entry ({i},{j}) = {e} has degree {got}, expected {want}")

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def twist(self, t: GradeElement) -> "GradedMap":
        """Same entry matrix between the twisted modules."""
        return GradedMap(self.source.twist(t), self.target.twist(t), self.entries, self.field, check=False)

    def transpose(self, target_twist: GradeElement) -> "GradedMap":
        """The dual map ``Hom(target, A(n)) -> Hom(source, A(n))``.

        ``Hom(A(u), A(n)) = A(n - u)``, so the dual of ``A(u)`` summands are
        ``A(n - u)`` and the matrix is the transpose.
        """
        n = target_twist
        src = FreeModule([n - s for s in self.target.shifts], self.source.weight)
        tgt = FreeModule([n - s for s in self.source.shifts], self.source.weight)
        ents = [[self.entries[i][j] for i in range(self.target.rank)] for j in range(self.source.rank)]
        return GradedMap(src, tgt, ents, self.field, check=False)

    def __eq__(self, other):
        return (
            isinstance(other, GradedMap)
            and self.source == other.source
            and self.target == other.target
            and self.entries == other.entries
        )

    def __repr__(self):
        return "GradedMap(%s <- %s)" % (self.target, self.source)

    def to_json(self):
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "entries": [[e.to_json() for e in row] for row in self.entries],
        }

    def to_tex(self) -> str:
        body = " \\\\\n".join(" & ".join(e.to_tex() for e in row) for row in self.entries)
        return "\\begin{pmatrix}\n%s\n\\end{pmatrix}" % body

    # degreewise linear algebra
    def graded_piece_matrix(self, v: GradeElement) -> np.ndarray:
        """Scalar matrix of the map restricted to internal degree ``v``."""
        cached = self._pieces.get(v)
        if cached is not None:
            return cached
        src = self.source.piece_basis(v)
        row_offsets = []
        off = 0
        tgt_bases = []
        for t in self.target.shifts:
            b = graded_piece_basis(t + v)
            tgt_bases.append({m: k for k, m in enumerate(b)})
            row_offsets.append(off)
            off += len(b)
        mat = linalg.zeros(off, len(src))
        w = self.source.weight
        for col, (j, mon) in enumerate(src):
            for i in range(self.target.rank):
                e = self.entries[i][j]
                if e.is_zero():
                    continue
                prod = e * RingElement({mon: 1}, w, self.field, reduced=True)
                for m, c in prod.terms.items():
                    try:
                        k = tgt_bases[i][m]
                    except KeyError:
                        raise DegreeError(f"entry ({i},{j}) is not homogeneous of the right degree") from None
                    mat[row_offsets[i] + k, col] = c
        self._pieces[v] = mat
        return mat


def compose(f: GradedMap, g: GradedMap) -> GradedMap:
    """``f o g`` (apply ``g`` first)."""
    if f.source != g.target:
        raise ValueError("module mismatch: source of f must equal target of g")
    w = f.source.weight
    ents = []
    for i in range(f.target.rank):
        row = []
        for j in range(g.source.rank):
            acc = RingElement.zero(w, f.field)
            for k in range(f.source.rank):
                a, b = f.entries[i][k], g.entries[k][j]
                if a and b:
                    acc = acc + a * b
            row.append(acc)
        ents.append(row)
    return GradedMap(g.source, f.target, ents, f.field)


def element_to_vector(module: FreeModule, column: Sequence[RingElement], v: GradeElement) -> list:
    """Coordinates of a module element of internal degree ``v``."""
    vec = []
    for s, e in zip(module.shifts, column):
        vec.extend(expand_in_basis(e, graded_piece_basis(s + v)))
    return vec


def vector_to_element(module: FreeModule, vec: Sequence, v: GradeElement, field: FieldSpec = QQ) -> List[RingElement]:
    out = []
    pos = 0
    w = module.weight
    for s in module.shifts:
        basis = graded_piece_basis(s + v)
        terms = {m: vec[pos + k] for k, m in enumerate(basis) if vec[pos + k] != 0}
        out.append(RingElement(terms, w, field, reduced=True))
        pos += len(basis)
    return out


class ChainComplex:
    """``modules[0] <- modules[1] <- ... <- modules[N]``; ``maps[i]`` is
    ``d_{i+1}: modules[i+1] -> modules[i]``."""

    def __init__(self, modules: Sequence[FreeModule], maps: Sequence[GradedMap]):
        self.modules = list(modules)
        self.maps = list(maps)
        if len(self.maps) != max(len(self.modules) - 1, 0):
            raise ValueError("need one map between consecutive modules")
        for i, d in enumerate(self.maps):
            if d.source != self.modules[i + 1] or d.target != self.modules[i]:
                raise ValueError(f"d_{i + 1} does not connect modules {i + 1} -> {i}")

    def __len__(self):
        return len(self.modules)

    def d(self, i: int) -> GradedMap:
        """``d_i: F_i -> F_{i-1}`` for ``1 <= i <= N``."""
        return self.maps[i - 1]

    @property
    def field(self) -> FieldSpec:
        return self.maps[0].field if self.maps else QQ

    def check_squares_zero(self) -> List[int]:
        """Indices ``i`` with ``d_i o d_{i+1} != 0``."""
        return [i for i in range(1, len(self.maps)) if not compose(self.d(i), self.d(i + 1)).is_zero()]

    def homology_dims(self, u: GradeElement, field: Optional[FieldSpec] = None) -> List[int]:
        return homology_dims(self, u, field)

    def to_json(self):
        return {
            "modules": [m.to_json() for m in self.modules],
            "maps": [d.to_json() for d in self.maps],
        }

    def to_dot(self, name="complex") -> str:
        lines = ["digraph %s {" % name, "  rankdir=RL;"]
        for i, m in enumerate(self.modules):
            label = "\\n".join("A(%s)" % s for s in m.shifts) or "0"
            lines.append('  F%d [shape=box,label="F%d\\n%s"];' % (i, i, label))
        for i in range(1, len(self.modules)):
            lines.append('  F%d -> F%d [label="d%d"];' % (i, i - 1, i))
        lines.append("}")
        return "\n".join(lines)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def homology_dims(C: ChainComplex, u: GradeElement, field: Optional[FieldSpec] = None, check=True) -> List[int]:
    """``dim ker d_i / im d_{i+1}`` in degree ``u`` at every position."""
    field = field or C.field
    if check:
        bad = C.check_squares_zero()
        if bad:
            raise ValueError(f"d o d != 0 at positions {bad}")
    dims = [m.piece_dim(u) for m in C.modules]
    ranks = [linalg.rank(d.graded_piece_matrix(u), field) for d in C.maps]
    out = []
    for i, dim in enumerate(dims):
        r_out = ranks[i - 1] if i >= 1 else 0
        r_in = ranks[i] if i < len(ranks) else 0
        out.append(dim - r_out - r_in)
    return out

"""Finite DG-categories with explicit bases, tensor products, twisted complexes.

Composition is written applicatively: ``compose(g, f) = g o f`` means
"first ``f: X -> Y``, then ``g: Y -> Z``", and the Leibniz rule reads
``d(g o f) = dg o f + (-1)^{|g|} g o df``.  Hom-space elements are sparse
dicts ``{basis index: coefficient}``.

Twisted complexes place each term ``E`` at an integer position ``p``
(standing for ``E[-p]``); a component ``q`` from term ``t`` to term ``s``
has internal degree ``p_t - p_s + 1`` and is only allowed when ``t``
precedes ``s`` in the term order.  The Pre-Tr hom space has
``hom^k = sum over l + p_s - p_t = k of hom^l(E_t, F_s)``.  All sign
choices for Pre-Tr live in :func:`_d_sign` and :func:`_q_sign`.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg
from .fields import QQ, FieldSpec

Vec = Dict[int, object]


class AxiomError(ValueError):
    pass


def _add_into(acc: Vec, vec: Vec, scale, field: FieldSpec):
    for k, c in vec.items():
        v = field(acc.get(k, 0) + scale * c)
        if v == 0:
            acc.pop(k, None)
        else:
            acc[k] = v


class DGCategory:
    """A finite DG-category given by basis-level tables.

    ``homs[(X, Y)]`` is a tuple of ``(name, degree)``;
    ``comp[(X, Y, Z)][(gi, fi)]`` is ``g o f`` for basis elements
    ``f`` of ``hom(X, Y)`` and ``g`` of ``hom(Y, Z)``;
    ``diff[(X, Y)][i]`` is ``d`` of basis element ``i``.  Missing table
    entries are zero.
    """

    def __init__(self, objects, homs, identities, comp, diff=None, field: FieldSpec = QQ, name: str = ""):
        self.objects = tuple(objects)
        self.homs = {k: tuple(v) for k, v in homs.items() if v}
        self.identities = dict(identities)
        self.comp = comp
        self.diff = diff or {}
        self.field = field
        self.name = name
        self._index = {k: {nm: i for i, (nm, _) in enumerate(v)} for k, v in self.homs.items()}

    # --- access ------------------------------------------------------------
    def basis(self, X, Y) -> Tuple[Tuple[Hashable, int], ...]:
        return self.homs.get((X, Y), ())

    def index(self, X, Y, name) -> int:
        return self._index[(X, Y)][name]

    def degree(self, X, Y, i: int) -> int:
        return self.homs[(X, Y)][i][1]

    def identity(self, X) -> Vec:
        return {self.index(X, X, self.identities[X]): 1}

    def element(self, X, Y, name, coeff=1) -> Vec:
        return {self.index(X, Y, name): self.field(coeff)}

    def compose_basis(self, X, Y, Z, gi: int, fi: int) -> Vec:
        return self.comp.get((X, Y, Z), {}).get((gi, fi), {})

    def compose(self, X, Y, Z, g: Vec, f: Vec) -> Vec:
        """``g o f`` for ``f`` in ``hom(X, Y)`` and ``g`` in ``hom(Y, Z)``."""
        out: Vec = {}
        table = self.comp.get((X, Y, Z), {})
        for gi, gc in g.items():
            for fi, fc in f.items():
                r = table.get((gi, fi))
                if r:
                    _add_into(out, r, gc * fc, self.field)
        return out

    def d(self, X, Y, f: Vec) -> Vec:
        out: Vec = {}
        table = self.diff.get((X, Y), {})
        for i, c in f.items():
            r = table.get(i)
            if r:
                _add_into(out, r, c, self.field)
        return out

    def dims_by_degree(self, X, Y) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for _, deg in self.basis(X, Y):
            out[deg] = out.get(deg, 0) + 1
        return out

    def total_dimension(self) -> int:
        return sum(len(v) for v in self.homs.values())

    def has_zero_differential(self) -> bool:
        return not any(r for t in self.diff.values() for r in t.values())

    # --- axioms ------------------------------------------------------------
    def check_axioms(self, limit: Optional[int] = None) -> List[str]:
        """Violations of: identities neutral and closed, d^2 = 0, d of
        degree +1, Leibniz on basis pairs, associativity on basis triples."""
        F = self.field
        errs: List[str] = []
        objs = self.objects
        for X in objs:
            if self.d(X, X, self.identity(X)):
                errs.append(f"d(id_{X}) != 0")
        for (X, Y), basis in self.homs.items():
            idX, idY = self.identity(X), self.identity(Y)
            for i, (nm, deg) in enumerate(basis):
                e = {i: 1}
                if self.compose(X, Y, Y, idY, e) != e or self.compose(X, X, Y, e, idX) != e:
                    errs.append(f"identity not neutral on {nm}: {X}->{Y}")
                de = self.d(X, Y, e)
                if any(self.degree(X, Y, k) != deg + 1 for k in de):
                    errs.append(f"d does not raise degree on {nm}")
                if self.d(X, Y, de):
                    errs.append(f"d^2 != 0 on {nm}")
        for X in objs:
            for Y in objs:
                bf = self.basis(X, Y)
                if not bf:
                    continue
                for Z in objs:
                    bg = self.basis(Y, Z)
                    if not bg:
                        continue
                    for fi, (_, fd) in enumerate(bf):
                        f = {fi: 1}
                        df = self.d(X, Y, f)
                        for gi, (_, gd) in enumerate(bg):
                            g = {gi: 1}
                            gf = self.compose(X, Y, Z, g, f)
                            if any(self.degree(X, Z, k) != fd + gd for k in gf):
                                errs.append(f"composition does not preserve degree at {X}->{Y}->{Z}")
                            lhs = self.d(X, Z, gf)
                            rhs = self.compose(X, Y, Z, self.d(Y, Z, g), f)
                            _add_into(rhs, self.compose(X, Y, Z, g, df), (-1) ** gd, F)
                            if lhs != rhs:
                                errs.append(f"Leibniz fails at {X}->{Y}->{Z}, ({gi},{fi})")
                            for W in objs:
                                bh = self.basis(Z, W)
                                for hi in range(len(bh)):
                                    h = {hi: 1}
                                    a = self.compose(X, Z, W, h, gf)
                                    b = self.compose(X, Y, W, self.compose(Y, Z, W, h, g), f)
                                    if a != b:
                                        errs.append(f"associativity fails at {X}->{Y}->{Z}->{W}")
                            if limit and len(errs) >= limit:
                                return errs
        return errs

    # --- derived views ----------------------------------------------------
    def reordered(self, order: Sequence) -> "DGCategory":
        order = tuple(order)
        if sorted(map(repr, order)) != sorted(map(repr, self.objects)):
            raise ValueError("a reordering must list every object exactly once")
        return DGCategory(order, self.homs, self.identities, self.comp, self.diff, self.field, self.name)

    def relabeled(self, mapping: Dict) -> "DGCategory":
        m = lambda X: mapping.get(X, X)
        return DGCategory(
            [m(X) for X in self.objects],
            {(m(X), m(Y)): v for (X, Y), v in self.homs.items()},
            {m(X): v for X, v in self.identities.items()},
            {(m(X), m(Y), m(Z)): v for (X, Y, Z), v in self.comp.items()},
            {(m(X), m(Y)): v for (X, Y), v in self.diff.items()},
            self.field,
            self.name,
        )

    def to_json(self):
        objs = list(self.objects)
        pos = {X: i for i, X in enumerate(objs)}
        homs = []
        for (X, Y), basis in sorted(self.homs.items(), key=lambda kv: (pos[kv[0][0]], pos[kv[0][1]])):
            homs.append({
                "source": pos[X],
                "target": pos[Y],
                "basis": [{"name": _name_str(nm), "degree": deg} for nm, deg in basis],
            })
        comps = []
        for (X, Y, Z), table in sorted(self.comp.items(), key=lambda kv: tuple(pos[o] for o in kv[0])):
            for (gi, fi), r in sorted(table.items()):
                if r:
                    comps.append({
                        "objects": [pos[X], pos[Y], pos[Z]],
                        "g": gi,
                        "f": fi,
                        "result": [[k, str(c)] for k, c in sorted(r.items())],
                    })
        diffs = []
        for (X, Y), table in sorted(self.diff.items(), key=lambda kv: (pos[kv[0][0]], pos[kv[0][1]])):
            for i, r in sorted(table.items()):
                if r:
                    diffs.append({"objects": [pos[X], pos[Y]], "basis": i,
                                  "result": [[k, str(c)] for k, c in sorted(r.items())]})
        return {
            "name": self.name,
            "field": self.field.to_json(),
            "objects": [_name_str(X) for X in objs],
            "identities": [[[k, str(c)] for k, c in sorted(self.identity(X).items())] for X in objs],
            "homs": homs,
            "composition": comps,
            "differential": diffs,
        }

    def to_dot(self) -> str:
        lines = ['digraph "%s" {' % (self.name or "C"), "  rankdir=LR;"]
        ids = {X: "o%d" % i for i, X in enumerate(self.objects)}
        for X in self.objects:
            lines.append('  %s [label="%s"];' % (ids[X], _name_str(X)))
        for X in self.objects:
            for Y in self.objects:
                if X == Y:
                    continue
                for nm, deg in self.basis(X, Y):
                    lines.append('  %s -> %s [label="%s (deg %d)"];' % (ids[X], ids[Y], _name_str(nm), deg))
        lines.append("}")
        return "\n".join(lines)


def _name_str(nm) -> str:
    if isinstance(nm, tuple):
        return "(" + ",".join(_name_str(t) for t in nm) + ")"
    return str(nm)


# --- constructions ------------------------------------------------------------

def identity_category(field: FieldSpec = QQ) -> DGCategory:
    """One object, endomorphisms ``k * id``; the unit for :func:`tensor`."""
    X = ()
    return DGCategory([X], {(X, X): [((), 0)]}, {X: ()}, {(X, X, X): {(0, 0): {0: 1}}}, {}, field, "unit")


def directed_category(p: int, field: FieldSpec = QQ) -> DGCategory:
    """Objects ``L_1..L_{p-1}``; ``k * id`` on each and one degree-1 arrow
    ``L_i -> L_{i+1}``; zero differential, arrows compose to zero."""
    if not isinstance(p, int) or p < 2:
        raise ValueError("p must be an integer >= 2")
    objs = [(i,) for i in range(1, p)]
    homs, comp, ids = {}, {}, {}
    for X in objs:
        homs[(X, X)] = [(("id",), 0)]
        ids[X] = ("id",)
        comp[(X, X, X)] = {(0, 0): {0: 1}}
    for i in range(1, p - 1):
        X, Y = (i,), (i + 1,)
        homs[(X, Y)] = [(("a",), 1)]
        comp[(X, Y, Y)] = {(0, 0): {0: 1}}  # id_Y o a
        comp[(X, X, Y)] = {(0, 0): {0: 1}}  # a o id_X
    return DGCategory(objs, homs, ids, comp, {}, field, "A%d" % (p - 1))


def tensor(C1: DGCategory, C2: DGCategory) -> DGCategory:
    """Tensor product with the Koszul signs

    ``(f (x) v) o (g (x) w) = (-1)^{|v||g|} (f o g) (x) (v o w)`` and
    ``d(f (x) v) = df (x) v + (-1)^{|f|} f (x) dv``.

    Objects and basis names are concatenated tuples, so the product is
    strictly associative on labels.
    """
    if C1.field != C2.field:
        raise ValueError("tensor factors over different fields")
    F = C1.field
    pairs = [(X1, X2) for X1 in C1.objects for X2 in C2.objects]
    obj = {p: p[0] + p[1] for p in pairs}
    homs, ids = {}, {}
    for (X1, X2) in pairs:
        ids[obj[(X1, X2)]] = C1.identities[X1] + C2.identities[X2]
        for (Y1, Y2) in pairs:
            b1, b2 = C1.basis(X1, Y1), C2.basis(X2, Y2)
            if b1 and b2:
                homs[(obj[(X1, X2)], obj[(Y1, Y2)])] = [(n1 + n2, d1 + d2) for n1, d1 in b1 for n2, d2 in b2]
    comp, diff = {}, {}
    for (X1, X2) in pairs:
        for (Y1, Y2) in pairs:
            bf1, bf2 = C1.basis(X1, Y1), C2.basis(X2, Y2)
            if not (bf1 and bf2):
                continue
            n2f = len(bf2)
            # differential
            table = {}
            for i1, (_, deg1) in enumerate(bf1):
                for i2 in range(n2f):
                    out: Vec = {}
                    for k, c in C1.d(X1, Y1, {i1: 1}).items():
                        _add_into(out, {k * n2f + i2: 1}, c, F)
                    for k, c in C2.d(X2, Y2, {i2: 1}).items():
                        _add_into(out, {i1 * n2f + k: 1}, c * (-1) ** deg1, F)
                    if out:
                        table[i1 * n2f + i2] = out
            if table:
                diff[(obj[(X1, X2)], obj[(Y1, Y2)])] = table
            for (Z1, Z2) in pairs:
                bg1, bg2 = C1.basis(Y1, Z1), C2.basis(Y2, Z2)
                if not (bg1 and bg2):
                    continue
                n2g = len(bg2)
                n2h = len(C2.basis(X2, Z2))
                if not C1.basis(X1, Z1) or not n2h:
                    continue
                table = {}
                for g1 in range(len(bg1)):
                    for v in range(n2g):
                        v_deg = bg2[v][1]
                        for f1 in range(len(bf1)):
                            # the left factor's C2-part (v) passes the right factor's C1-part (f1)
                            sign = (-1) ** (v_deg * bf1[f1][1])
                            left = C1.compose_basis(X1, Y1, Z1, g1, f1)
                            if not left:
                                continue
                            for w_ in range(n2f):
                                right = C2.compose_basis(X2, Y2, Z2, v, w_)
                                if not right:
                                    continue
                                out: Vec = {}
                                for k1, c1 in left.items():
                                    for k2, c2 in right.items():
                                        _add_into(out, {k1 * n2h + k2: 1}, sign * c1 * c2, F)
                                if out:
                                    table[(g1 * n2g + v, f1 * n2f + w_)] = out
                if table:
                    comp[(obj[(X1, X2)], obj[(Y1, Y2)], obj[(Z1, Z2)])] = table
    name = "%s*%s" % (C1.name, C2.name) if C1.name and C2.name else ""
    return DGCategory([obj[p] for p in pairs], homs, ids, comp, diff, F, name)


def tensor_all(cats: Iterable[DGCategory]) -> DGCategory:
    cats = list(cats)
    out = cats[0]
    for C in cats[1:]:
        out = tensor(out, C)
    return out


def euler_matrix(C: DGCategory, order: Optional[Sequence] = None) -> np.ndarray:
    """``sum_d (-1)^d dim hom^d(E_i, E_j)`` over the ordered objects."""
    order = list(order if order is not None else C.objects)
    out = np.zeros((len(order), len(order)), dtype=np.int64)
    for i, X in enumerate(order):
        for j, Y in enumerate(order):
            out[i, j] = sum((-1) ** deg for _, deg in C.basis(X, Y))
    return out


def isomorphic_tables(C1: DGCategory, C2: DGCategory) -> bool:
    """Literal equality of objects, bases, composition and differential."""
    if C1.objects != C2.objects or C1.homs != C2.homs or C1.identities != C2.identities:
        return False
    strip = lambda t: {k: {kk: vv for kk, vv in v.items() if vv} for k, v in t.items() if any(v.values())}
    return strip(C1.comp) == strip(C2.comp) and strip(C1.diff) == strip(C2.diff)


# --- twisted complexes -----------------------------------------------------------

def _d_sign(pos_target: int) -> int:
    """Sign on the internal differential of a component landing at a term
    of position ``p``: ``(-1)^p``, from ``E[-p]`` in front of the morphism."""
    return -1 if pos_target % 2 else 1


def _q_sign(total_degree: int) -> int:
    """Sign on ``f o q`` in the Pre-Tr differential: ``-(-1)^k``."""
    return 1 if total_degree % 2 else -1


@dataclass(frozen=True)
class Term:
    obj: Hashable
    pos: int


class TwistedComplex:
    """Terms ``(object, position)`` and components ``q[(t, s)]``.

    ``q[(t, s)]`` lies in ``hom^{p_t - p_s + 1}(E_t, E_s)`` and is only
    allowed for ``t < s`` (term order), which makes the complex one-sided.
    Maurer-Cartan: ``(-1)^{p_s} d q_ts + sum_u q_us o q_tu = 0``; for a
    category with zero differential this is ``sum_u q_us o q_tu = 0``.
    """

    def __init__(self, category: DGCategory, terms: Sequence, q: Optional[Dict[Tuple[int, int], Vec]] = None,
                 check: bool = True):
        self.category = category
        self.terms = tuple(t if isinstance(t, Term) else Term(*t) for t in terms)
        self.q = {k: dict(v) for k, v in (q or {}).items() if v}
        if check:
            errs = self.violations()
            if errs:
                raise AxiomError("; ".join(errs))

    @classmethod
    def single(cls, category: DGCategory, obj, pos: int = 0) -> "TwistedComplex":
        return cls(category, [Term(obj, pos)])

    def __len__(self):
        return len(self.terms)

    def is_one_sided(self) -> bool:
        return all(t < s for (t, s) in self.q)

    def violations(self) -> List[str]:
        C = self.category
        errs = []
        for (t, s), vec in self.q.items():
            if not t < s:
                errs.append(f"component q[{t},{s}] breaks one-sidedness")
                continue
            Tt, Ts = self.terms[t], self.terms[s]
            want = Tt.pos - Ts.pos + 1
            for k in vec:
                if C.degree(Tt.obj, Ts.obj, k) != want:
                    errs.append(f"component q[{t},{s}] is not of degree {want}")
        if errs:
            return errs
        for t in range(len(self.terms)):
            for s in range(t + 1, len(self.terms)):
                if self.mc_component(t, s):
                    errs.append(f"Maurer-Cartan fails at ({t},{s})")
        return errs

    def mc_component(self, t: int, s: int) -> Vec:
        C, F = self.category, self.category.field
        Tt, Ts = self.terms[t], self.terms[s]
        out: Vec = {}
        if (t, s) in self.q:
            _add_into(out, C.d(Tt.obj, Ts.obj, self.q[(t, s)]), _d_sign(Ts.pos), F)
        for u in range(t + 1, s):
            a, b = self.q.get((t, u)), self.q.get((u, s))
            if a and b:
                _add_into(out, C.compose(Tt.obj, self.terms[u].obj, Ts.obj, b, a), 1, F)
        return out

    def shift(self, n: int) -> "TwistedComplex":
        """``K[n]``: positions drop by ``n`` and components pick up ``(-1)^n``."""
        sgn = -1 if n % 2 else 1
        F = self.category.field
        return TwistedComplex(
            self.category,
            [Term(T.obj, T.pos - n) for T in self.terms],
            {k: {i: F(sgn * c) for i, c in v.items()} for k, v in self.q.items()},
        )

    def direct_sum(self, other: "TwistedComplex") -> "TwistedComplex":
        off = len(self.terms)
        q = dict(self.q)
        q.update({(t + off, s + off): v for (t, s), v in other.q.items()})
        return TwistedComplex(self.category, self.terms + other.terms, q)

    def __repr__(self):
        return "TwistedComplex(%s, %d components)" % (
            ", ".join("%s@%d" % (_name_str(T.obj), T.pos) for T in self.terms), len(self.q))


class PretrHom:
    """The complex ``hom_{Pre-Tr}(K, K')`` with bases ``(t, s, i)``."""

    def __init__(self, K: TwistedComplex, K2: TwistedComplex):
        if K.category is not K2.category:
            raise ValueError("twisted complexes over different categories")
        self.K, self.K2 = K, K2
        C = K.category
        self.basis: Dict[int, List[Tuple[int, int, int]]] = {}
        for t, Tt in enumerate(K.terms):
            for s, Ts in enumerate(K2.terms):
                for i, (_, l) in enumerate(C.basis(Tt.obj, Ts.obj)):
                    self.basis.setdefault(l + Ts.pos - Tt.pos, []).append((t, s, i))
        self._index = {k: {b: j for j, b in enumerate(v)} for k, v in self.basis.items()}

    def degrees(self) -> List[int]:
        return sorted(self.basis)

    def total_degree(self, t: int, s: int, i: int) -> int:
        C = self.K.category
        Tt, Ts = self.K.terms[t], self.K2.terms[s]
        return C.degree(Tt.obj, Ts.obj, i) + Ts.pos - Tt.pos

    def differential(self, f: Dict[Tuple[int, int, int], object]) -> Dict[Tuple[int, int, int], object]:
        """``D f = (-1)^{p_s} d f + sum r o f - (-1)^k sum f o q``."""
        K, K2, C = self.K, self.K2, self.K.category
        F = C.field
        out: Dict[Tuple[int, int, int], object] = {}

        def add(key, c):
            v = F(out.get(key, 0) + c)
            if v == 0:
                out.pop(key, None)
            else:
                out[key] = v

        for (t, s, i), c in f.items():
            if c == 0:
                continue
            Et, Fs = K.terms[t].obj, K2.terms[s].obj
            k = self.total_degree(t, s, i)
            e = {i: c}
            for j, cj in C.d(Et, Fs, e).items():
                add((t, s, j), _d_sign(K2.terms[s].pos) * cj)
            for s2 in range(s + 1, len(K2.terms)):
                r = K2.q.get((s, s2))
                if r:
                    for j, cj in C.compose(Et, Fs, K2.terms[s2].obj, r, e).items():
                        add((t, s2, j), cj)
            for t0 in range(t):
                q = K.q.get((t0, t))
                if q:
                    for j, cj in C.compose(K.terms[t0].obj, Et, Fs, e, q).items():
                        add((t0, s, j), _q_sign(k) * cj)
        return out

    def matrix(self, k: int) -> np.ndarray:
        """Matrix of ``D: hom^k -> hom^{k+1}``."""
        src = self.basis.get(k, [])
        tgt = self._index.get(k + 1, {})
        M = linalg.zeros(len(tgt), len(src))
        for col, b in enumerate(src):
            for key, c in self.differential({b: 1}).items():
                M[tgt[key], col] = c
        return M

    def cohomology_dims(self) -> Dict[int, int]:
        F = self.K.category.field
        out = {}
        for k in self.degrees():
            dim = len(self.basis[k])
            r_out = linalg.rank(self.matrix(k), F)
            r_in = linalg.rank(self.matrix(k - 1), F) if (k - 1) in self.basis else 0
            h = dim - r_out - r_in
            if h:
                out[k] = h
        return out

    def cocycles(self, k: int) -> List[Dict[Tuple[int, int, int], object]]:
        F = self.K.category.field
        src = self.basis.get(k, [])
        out = []
        for v in linalg.nullspace(self.matrix(k), F):
            out.append({src[j]: c for j, c in enumerate(v) if c != 0})
        return out


def pretr_hom(K: TwistedComplex, K2: TwistedComplex) -> PretrHom:
    return PretrHom(K, K2)


def pretr_compose(K, K2, K3, g, f) -> Dict[Tuple[int, int, int], object]:
    """``g o f`` for ``f: K -> K2`` and ``g: K2 -> K3``; componentwise, no sign."""
    C = K.category
    F = C.field
    out: Dict[Tuple[int, int, int], object] = {}
    for (s, r, j), cg in g.items():
        for (t, s2, i), cf in f.items():
            if s != s2:
                continue
            res = C.compose(K.terms[t].obj, K2.terms[s].obj, K3.terms[r].obj, {j: cg}, {i: cf})
            for k, c in res.items():
                v = F(out.get((t, r, k), 0) + c)
                if v == 0:
                    out.pop((t, r, k), None)
                else:
                    out[(t, r, k)] = v
    return out


def identity_morphism(K: TwistedComplex) -> Dict[Tuple[int, int, int], object]:
    C = K.category
    return {(t, t, k): c for t, T in enumerate(K.terms) for k, c in C.identity(T.obj).items()}


def cone(K: TwistedComplex, K2: TwistedComplex, phi: Dict[Tuple[int, int, int], object]) -> TwistedComplex:
    """Cone of a closed degree-0 morphism ``phi: K -> K2``.

    Terms are ``K[1]`` followed by ``K2``; the components from the first
    block to the second are the components of ``phi``.
    """
    H = PretrHom(K, K2)
    for (t, s, i) in phi:
        if H.total_degree(t, s, i) != 0:
            raise AxiomError("cone needs a morphism of total degree 0")
    if H.differential(phi):
        raise AxiomError("cone needs a closed morphism")
    K1 = K.shift(1)
    off = len(K1.terms)
    q = dict(K1.q)
    q.update({(t + off, s + off): v for (t, s), v in K2.q.items()})
    F = K.category.field
    for (t, s, i), c in phi.items():
        slot = q.setdefault((t, s + off), {})
        slot[i] = F(slot.get(i, 0) + c)
    return TwistedComplex(K.category, K1.terms + K2.terms, q)


def pretr_category(complexes: Sequence[TwistedComplex], labels: Optional[Sequence] = None) -> DGCategory:
    """The full DG-subcategory of Pre-Tr spanned by the given complexes."""
    labels = list(labels if labels is not None else [("K%d" % i,) for i in range(len(complexes))])
    base = complexes[0].category
    homs, diff, comp, ids = {}, {}, {}, {}
    H = {}
    for a, Ka in zip(labels, complexes):
        for b, Kb in zip(labels, complexes):
            h = H[(a, b)] = PretrHom(Ka, Kb)
            basis = [((t, s, i), k) for k in h.degrees() for (t, s, i) in h.basis[k]]
            homs[(a, b)] = basis
    index = {k: {nm: j for j, (nm, _) in enumerate(v)} for k, v in homs.items()}
    for a in labels:
        ids[a] = None
    for (a, b), h in H.items():
        table = {}
        for j, (nm, _) in enumerate(homs[(a, b)]):
            dv = h.differential({nm: 1})
            if dv:
                table[j] = {index[(a, b)][key]: c for key, c in dv.items()}
        if table:
            diff[(a, b)] = table
    for a, Ka in zip(labels, complexes):
        for b, Kb in zip(labels, complexes):
            for c_, Kc in zip(labels, complexes):
                table = {}
                for fj, (fn, _) in enumerate(homs[(a, b)]):
                    for gj, (gn, _) in enumerate(homs[(b, c_)]):
                        r = pretr_compose(Ka, Kb, Kc, {gn: 1}, {fn: 1})
                        if r:
                            table[(gj, fj)] = {index[(a, c_)][key]: v for key, v in r.items()}
                if table:
                    comp[(a, b, c_)] = table
    cat = _PretrCategory(labels, homs, ids, comp, diff, base.field, "Pre-Tr")
    cat._identity_vectors = {
        a: {index[(a, a)][key]: v for key, v in identity_morphism(Ka).items()} for a, Ka in zip(labels, complexes)
    }
    return cat


class _PretrCategory(DGCategory):
    """Pre-Tr subcategory; identities of multi-term complexes are sums of
    basis elements, so they are stored as vectors."""

    _identity_vectors: Dict = {}

    def identity(self, X) -> Vec:
        return dict(self._identity_vectors[X])

    def index(self, X, Y, name) -> int:
        return self._index[(X, Y)][name]


# --- random instances (property tests) ------------------------------------------

def random_closed_morphism(K, K2, rng: random.Random, degree: int = 0, nonzero: bool = False):
    H = PretrHom(K, K2)
    basis = H.cocycles(degree)
    if not basis:
        return {}
    F = K.category.field
    out: Dict = {}
    while True:
        for vec in basis:
            c = rng.randint(-2, 2)
            for key, v in vec.items():
                nv = F(out.get(key, 0) + c * v)
                if nv == 0:
                    out.pop(key, None)
                else:
                    out[key] = nv
        if out or not nonzero:
            return out


def _linked_term(C: DGCategory, K: TwistedComplex, rng: random.Random, incoming: bool):
    """A one-term complex admitting a degree-0 morphism to (or from) ``K``."""
    options = []
    for T in K.terms:
        for X in C.objects:
            basis = C.basis(X, T.obj) if incoming else C.basis(T.obj, X)
            for _, l in basis:
                # total degree l + p_target - p_source = 0
                options.append((X, T.pos + l if incoming else T.pos - l))
    return options


def random_twisted_complex(C: DGCategory, rng: random.Random, size: int = 3, pos_range: int = 2,
                           linked: float = 0.8) -> TwistedComplex:
    """Built by iterated cones of random closed degree-0 morphisms.

    With probability ``linked`` each new term is placed where a nonzero
    degree-0 morphism can exist, so that most cones carry components.
    """
    objs = list(C.objects)
    K = TwistedComplex.single(C, rng.choice(objs), rng.randint(-pos_range, pos_range))
    while len(K.terms) < size:
        incoming = rng.random() < 0.5
        options = _linked_term(C, K, rng, incoming)
        if options and rng.random() < linked:
            X, p = rng.choice(options)
        else:
            X, p = rng.choice(objs), rng.randint(-pos_range, pos_range)
        L = TwistedComplex.single(C, X, p)
        if incoming:
            K = cone(L, K, random_closed_morphism(L, K, rng))
        else:
            K = cone(K, L, random_closed_morphism(K, L, rng))
    return K


def random_morphism(H: PretrHom, rng: random.Random) -> Dict:
    F = H.K.category.field
    out = {}
    for k, basis in H.basis.items():
        for b in basis:
            c = rng.randint(-3, 3)
            if c:
                out[b] = F(c)
    return out

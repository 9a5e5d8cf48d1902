"""Exact dense linear algebra over QQ and GF(q).

Matrices are numpy object arrays (so that empty shapes survive) holding
Python ints or Fractions.  Over QQ the rank is computed by fraction-free
(Bareiss) elimination on an integer matrix; solves use exact Fractions.
Pivots are the first nonzero entry in column order unless
``pivot_order="last"`` is requested.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from .fields import QQ, FieldSpec


def zeros(rows: int, cols: int) -> np.ndarray:
    out = np.empty((rows, cols), dtype=object)
    out.fill(0)
    return out


def as_matrix(rows: Sequence[Sequence], ncols: Optional[int] = None) -> np.ndarray:
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    out = zeros(len(rows), ncols)
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            out[i, j] = v
    return out


def matmul(a: np.ndarray, b: np.ndarray, field: FieldSpec = QQ) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    out = zeros(a.shape[0], b.shape[1])
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            s = 0
            for k in range(a.shape[1]):
                if a[i, k] and b[k, j]:
                    s += a[i, k] * b[k, j]
            out[i, j] = field(s)
    return out


def is_zero(a: np.ndarray) -> bool:
    return all(v == 0 for v in a.flat)


def _integer_rows(m: np.ndarray) -> List[List[int]]:
    rows = []
    for r in m.tolist():
        den = 1
        for v in r:
            if isinstance(v, Fraction):
                den = den * v.denominator // math.gcd(den, v.denominator)
        rows.append([int(v * den) for v in r])
    return rows


def _bareiss_rank(rows: List[List[int]], ncols: int) -> int:
    rank = 0
    prev = 1
    nrows = len(rows)
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        prow = rows[rank]
        for i in range(rank + 1, nrows):
            ri = rows[i]
            f = ri[col]
            if f == 0:
                # still scale so that the division by prev stays exact
                rows[i] = [(p * v) // prev for v in ri]
                continue
            rows[i] = [(p * ri[j] - f * prow[j]) // prev for j in range(ncols)]
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def _modp_rank(rows: List[List[int]], ncols: int, q: int) -> int:
    rank = 0
    nrows = len(rows)
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if rows[i][col] % q), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, q)
        prow = [(v * inv) % q for v in rows[rank]]
        rows[rank] = prow
        for i in range(rank + 1, nrows):
            f = rows[i][col] % q
            if f:
                rows[i] = [(rows[i][j] - f * prow[j]) % q for j in range(ncols)]
        rank += 1
        if rank == nrows:
            break
    return rank


def rank(m: np.ndarray, field: FieldSpec = QQ) -> int:
    nrows, ncols = m.shape
    if nrows == 0 or ncols == 0:
        return 0
    if field.is_rational:
        return _bareiss_rank(_integer_rows(m), ncols)
    q = field.characteristic
    return _modp_rank([[field(v) for v in r] for r in m.tolist()], ncols, q)


def determinant(m: np.ndarray) -> int:
    """Exact determinant of a square integer matrix (Bareiss)."""
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("square matrix required")
    if n == 0:
        return 1
    rows = [[int(v) for v in r] for r in m.tolist()]
    sign, prev = 1, 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if rows[i][k] != 0), None)
            if swap is None:
                return 0
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // prev
        prev = rows[k][k]
    return sign * rows[n - 1][n - 1]


def _echelon(m: np.ndarray, field: FieldSpec, pivot_order: str, extra: Optional[list] = None):
    """Reduced row echelon form; returns (rows, pivot columns, extra rows).

    ``extra`` is a list of right-hand-side columns carried along.
    """
    nrows, ncols = m.shape
    rows = [[field(v) for v in r] for r in m.tolist()]
    rhs = [list(col) for col in (extra or [])]  # each rhs is a column of length nrows
    cols = list(range(ncols)) if pivot_order == "first" else list(reversed(range(ncols)))
    pivots = []
    r = 0
    for col in cols:
        piv = next((i for i in range(r, nrows) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for v in rhs:
            v[r], v[piv] = v[piv], v[r]
        inv = field.inv(rows[r][col])
        rows[r] = [field(x * inv) for x in rows[r]]
        for v in rhs:
            v[r] = field(v[r] * inv)
        for i in range(nrows):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [field(a - f * b) for a, b in zip(rows[i], rows[r])]
                for v in rhs:
                    v[i] = field(v[i] - f * v[r])
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return rows, pivots, rhs


def solve(m: np.ndarray, b: Sequence, field: FieldSpec = QQ, pivot_order: str = "first") -> Optional[list]:
    """One solution ``x`` of ``m @ x = b`` (free variables set to 0), or None."""
    nrows, ncols = m.shape
    b = [field(v) for v in b]
    if len(b) != nrows:
        raise ValueError("right-hand side has the wrong length")
    rows, pivots, (rhs,) = _echelon(m, field, pivot_order, [b])
    for i in range(len(pivots), nrows):
        if rhs[i] != 0:
            return None
    x = [0] * ncols
    for i, col in enumerate(pivots):
        x[col] = rhs[i]
    return x


def nullspace(m: np.ndarray, field: FieldSpec = QQ) -> List[list]:
    """Basis of ``{v : m @ v = 0}``."""
    nrows, ncols = m.shape
    rows, pivots, _ = _echelon(m, field, "first")
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, col in enumerate(pivots):
            v[col] = field(-rows[i][f])
        basis.append(v)
    return basis

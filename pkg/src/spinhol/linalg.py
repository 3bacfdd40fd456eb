"""Exact linear algebra over the rationals.

Vectors and matrices carry Python ints (arbitrary precision) inside numpy
arrays; hot paths run on int64 with explicit overflow bounds and fall back to
object dtype when the bound would be violated, so every result is exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np

_INT64_LIMIT = 2**62


def as_int_vector(values: Iterable) -> np.ndarray:
    """Integer numpy vector from ints/Fractions, cleared of denominators."""
    return as_scaled_int_vector(values)[0]


def as_scaled_int_vector(values: Iterable) -> tuple[np.ndarray, int]:
    """(denominator-cleared integer vector, the positive scale used)."""
    vals = list(values)
    den = 1
    if any(isinstance(v, Fraction) for v in vals):
        for v in vals:
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
        vals = [int(v * den) if isinstance(v, Fraction) else v * den for v in vals]
    else:
        vals = [int(v) for v in vals]
    arr = np.array(vals, dtype=object)
    return _demote(arr), den


def _demote(arr: np.ndarray) -> np.ndarray:
    """int64 view when every entry fits comfortably, else object dtype."""
    if arr.dtype == object:
        if arr.size and all(-_INT64_LIMIT < v < _INT64_LIMIT for v in arr.flat):
            return arr.astype(np.int64)
        return arr
    return arr


def _promote(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == object:
        return arr
    return arr.astype(object)


def vec_max_abs(v: np.ndarray) -> int:
    if v.size == 0:
        return 0
    if v.dtype == object:
        return max((abs(int(x)) for x in v.flat), default=0)
    return int(np.abs(v).max())


def content_reduce(v: np.ndarray) -> np.ndarray:
    """Divide by the gcd of the entries; sign-normalize the leading entry."""
    if v.dtype == object:
        g = 0
        for x in v.flat:
            g = gcd(g, abs(int(x)))
            if g == 1:
                break
    else:
        g = int(np.gcd.reduce(np.abs(v))) if v.size else 0
    if g > 1:
        if v.dtype == object:
            v = np.array([int(x) // g for x in v.flat], dtype=object)
        else:
            v = v // g
    for x in v.flat:
        if x:
            if x < 0:
                v = -v
            break
    return _demote(v)


def _combine(c1: int, v: np.ndarray, c2: int, r: np.ndarray) -> np.ndarray:
    """c1*v - c2*r, exactly."""
    if v.dtype != object and r.dtype != object:
        bound = abs(c1) * vec_max_abs(v) + abs(c2) * vec_max_abs(r)
        if bound < _INT64_LIMIT and -_INT64_LIMIT < c1 < _INT64_LIMIT and -_INT64_LIMIT < c2 < _INT64_LIMIT:
            return v * np.int64(c1) - r * np.int64(c2)
    return _promote(v) * c1 - _promote(r) * c2


_REDUCE_TRIGGER = 1 << 44   # int64 entries above this get a C-level gcd pass
_OBJECT_PERIOD = 6          # object-path content reduction cadence


class IntRowBasis:
    """Incremental integer row-echelon basis of a rational subspace.

    Rows have content 1 and strictly increasing pivot columns; reduction is
    fraction-free so everything stays integral.  Growth is controlled by
    bound-tracked content reduction: cheap C-level passes on int64 vectors,
    periodic passes once a vector outgrows int64.
    """

    def __init__(self, width: int):
        self.width = width
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []
        self._row_max: list[int] = []

    @classmethod
    def wrap(cls, width: int, rows: Sequence[np.ndarray], pivots: Sequence[int]) -> "IntRowBasis":
        """View existing echelon rows (content 1, pivot-sorted) as a basis."""
        basis = cls(width)
        basis.rows = list(rows)
        basis.pivots = list(pivots)
        basis._row_max = [vec_max_abs(r) for r in rows]
        return basis

    @property
    def dim(self) -> int:
        return len(self.rows)

    def residual(self, vec) -> np.ndarray | None:
        """Content-1 residual of vec against the basis, or None if in span."""
        v = vec if isinstance(vec, np.ndarray) else as_int_vector(vec)
        if v.shape != (self.width,):
            raise ValueError(f"expected length-{self.width} vector")
        v = content_reduce(v.copy())
        bound = vec_max_abs(v)
        steps = 0
        for pivot, row, row_max in zip(self.pivots, self.rows, self._row_max):
            b = int(v[pivot])
            if not b:
                continue
            a = int(row[pivot])
            g = gcd(a, b)
            c1, c2 = a // g, b // g
            new_bound = abs(c1) * bound + abs(c2) * row_max
            if v.dtype != object and row.dtype != object and new_bound < _INT64_LIMIT:
                v = v * np.int64(c1) - row * np.int64(c2)
                bound = new_bound
                if bound > _REDUCE_TRIGGER:
                    gc = int(np.gcd.reduce(np.abs(v)))
                    if gc > 1:
                        v = v // gc
                    bound = int(np.abs(v).max()) if v.size else 0
            else:
                v = _promote(v) * c1 - _promote(row) * c2
                steps += 1
                if steps % _OBJECT_PERIOD == 0:
                    v = content_reduce(v)
                    bound = vec_max_abs(v)
                else:
                    bound = new_bound
        if v.dtype == object:
            v = content_reduce(v)
        nz = np.flatnonzero(v) if v.dtype != object else \
            [i for i, x in enumerate(v.flat) if x]
        if len(nz) == 0:
            return None
        if v.dtype != object:
            gc = int(np.gcd.reduce(np.abs(v[nz])))
            if gc > 1:
                v = v // gc
        if v[nz[0]] < 0:
            v = -v
        return v

    def insert(self, vec) -> np.ndarray | None:
        """Add vec's residual to the basis; returns it, or None if dependent."""
        r = self.residual(vec)
        if r is None:
            return None
        pivot = next(i for i, x in enumerate(r.flat) if x)
        pos = 0
        while pos < len(self.pivots) and self.pivots[pos] < pivot:
            pos += 1
        self.rows.insert(pos, r)
        self.pivots.insert(pos, pivot)
        self._row_max.insert(pos, vec_max_abs(r))
        return r

    def contains(self, vec) -> bool:
        return self.residual(vec) is None

    def reduced_rows(self) -> tuple[list[np.ndarray], list[int]]:
        """Fully back-substituted integer rows (content 1), echelon order."""
        rows = [r.copy() for r in self.rows]
        for i in range(len(rows) - 1, -1, -1):
            for j in range(i + 1, len(rows)):
                p = self.pivots[j]
                b = int(rows[i][p])
                if b:
                    a = int(rows[j][p])
                    g = gcd(a, b)
                    rows[i] = content_reduce(_combine(a // g, rows[i], b // g, rows[j]))
        return rows, list(self.pivots)


def canonical_rows(basis: IntRowBasis) -> tuple[tuple[tuple[Fraction, ...], ...], tuple[int, ...]]:
    """Reduced row-echelon form with unit pivots (the canonical basis)."""
    rows, pivots = basis.reduced_rows()
    out = []
    for row, pivot in zip(rows, pivots):
        p = Fraction(int(row[pivot]))
        out.append(tuple(Fraction(int(x)) / p for x in row.flat))
    return tuple(out), tuple(pivots)


def kernel_basis(rows: Sequence[Sequence], width: int) -> list[np.ndarray]:
    """Integer basis of {x : row . x = 0 for every row}."""
    ech = IntRowBasis(width)
    for row in rows:
        ech.insert(as_int_vector(row))
    reduced, pivots = ech.reduced_rows()
    pivot_set = set(pivots)
    free = [c for c in range(width) if c not in pivot_set]
    out = []
    for f in free:
        x = [Fraction(0)] * width
        x[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            # row . x = 0 with x supported on {f} + pivots
            x[p] = Fraction(-int(row[f]), int(row[p]))
        out.append(as_int_vector(x))
    return out


def solve_columns(columns: Sequence[np.ndarray], target) -> list[Fraction] | None:
    """Exact x with sum_j x_j col_j = target, or None if inconsistent.

    Columns must be linearly independent.
    """
    m = len(columns)
    t = [Fraction(int(v)) if not isinstance(v, Fraction) else v for v in target]
    height = len(t)
    aug = [[Fraction(int(col[i])) if not isinstance(col[i], Fraction) else col[i] for col in columns] + [t[i]]
           for i in range(height)]
    piv_rows: list[int] = []
    r = 0
    for c in range(m):
        sel = None
        for i in range(r, height):
            if aug[i][c]:
                sel = i
                break
        if sel is None:
            return None  # dependent columns
        aug[r], aug[sel] = aug[sel], aug[r]
        pr = aug[r]
        inv = 1 / pr[c]
        aug[r] = pr = [v * inv for v in pr]
        for i in range(height):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], pr)]
        piv_rows.append(r)
        r += 1
    for i in range(r, height):
        if aug[i][m]:
            return None
    return [aug[i][m] for i in range(m)]


def gram_matrix(rows: Sequence[np.ndarray], signs: np.ndarray | None = None) -> list[list[Fraction]]:
    """Matrix of <r_i, D r_j> with D = diag(signs) (default identity)."""
    mat = np.array([_promote(np.asarray(r)) for r in rows], dtype=object)
    weighted = mat if signs is None else mat * signs
    prod = weighted @ mat.T
    return [[Fraction(int(prod[i, j])) if not isinstance(prod[i, j], Fraction) else prod[i, j]
             for j in range(len(rows))] for i in range(len(rows))]


def symmetric_signature(matrix) -> tuple[int, int, int]:
    """(positives, negatives, zeros) of a symmetric rational matrix.

    Fraction-free symmetric congruence: each pivot step replaces the trailing
    block B by p*B - c c^T, which rescales it by p, so a running sign flip
    tracks the true inertia.  Positive content rescaling is free.
    """
    a = _sym_to_int_matrix(matrix)
    d = a.shape[0]
    pos = neg = zero = 0
    flip = 1
    while a.shape[0]:
        a = _matrix_content_reduce(a)
        k = a.shape[0]
        diag_idx = next((i for i in range(k) if a[i, i]), None)
        if diag_idx is not None:
            i = diag_idx
            p = int(a[i, i])
            if (p > 0) == (flip > 0):
                pos += 1
            else:
                neg += 1
            keep = [j for j in range(k) if j != i]
            c = a[keep, i]
            rest = a[np.ix_(keep, keep)]
            a = _scaled_schur(rest, p, [c])
            flip = flip if p > 0 else -flip
            continue
        off = None
        for i in range(k):
            for j in range(i + 1, k):
                if a[i, j]:
                    off = (i, j)
                    break
            if off:
                break
        if off is None:
            zero += k
            break
        i, j = off
        b = int(a[i, j])
        pos += 1
        neg += 1
        keep = [t for t in range(k) if t not in (i, j)]
        u = a[keep, i]
        v = a[keep, j]
        rest = a[np.ix_(keep, keep)]
        # Schur complement of [[0,b],[b,0]] scaled by b: b*rest - (u v^T + v u^T)
        a = _scaled_schur_pair(rest, b, u, v)
        flip = flip if b > 0 else -flip
    assert pos + neg + zero == d
    return pos, neg, zero


def _sym_to_int_matrix(matrix) -> np.ndarray:
    rows = [list(r) for r in matrix]
    den = 1
    for r in rows:
        for v in r:
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
    data = [[int(v * den) if isinstance(v, Fraction) else int(v) * den for v in r] for r in rows]
    a = np.array(data, dtype=object)
    if a.size == 0:
        a = a.reshape(0, 0)
    return _demote(a)


def _matrix_content_reduce(a: np.ndarray) -> np.ndarray:
    if a.size == 0:
        return a
    if a.dtype == object:
        g = 0
        for x in a.flat:
            g = gcd(g, abs(int(x)))
            if g == 1:
                break
        if g > 1:
            a = np.array([[int(x) // g for x in row] for row in a], dtype=object)
        return _demote(a)
    g = int(np.gcd.reduce(np.abs(a).ravel()))
    if g > 1:
        a = a // g
    return a


def _scaled_schur(rest: np.ndarray, p: int, cols: list[np.ndarray]) -> np.ndarray:
    (c,) = cols
    if rest.dtype != object and c.dtype != object:
        m = vec_max_abs(rest)
        mc = vec_max_abs(c)
        if abs(p) * m + mc * mc < _INT64_LIMIT and -_INT64_LIMIT < p < _INT64_LIMIT:
            return rest * np.int64(p) - np.outer(c, c)
    rest = _promote(rest)
    c = _promote(c)
    return rest * p - np.outer(c, c)


def _scaled_schur_pair(rest: np.ndarray, b: int, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    if rest.dtype != object and u.dtype != object and v.dtype != object:
        m = vec_max_abs(rest)
        mu, mv = vec_max_abs(u), vec_max_abs(v)
        if abs(b) * m + 2 * mu * mv < _INT64_LIMIT and -_INT64_LIMIT < b < _INT64_LIMIT:
            return rest * np.int64(b) - np.outer(u, v) - np.outer(v, u)
    rest = _promote(rest)
    u = _promote(u)
    v = _promote(v)
    return rest * b - np.outer(u, v) - np.outer(v, u)


def int_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact integer matrix product with an int64 fast path."""
    if a.dtype != object and b.dtype != object:
        bound = a.shape[1] * vec_max_abs(a) * vec_max_abs(b)
        if bound < _INT64_LIMIT:
            return a @ b
    return _promote(a) @ _promote(b)

"""Exact subspace arithmetic, Lie closure, and so(p,q) classification.

Subspaces are stored by their unique reduced row-echelon basis over the
rationals, so equality and membership are exact.  All bracket bookkeeping runs
on integer vectors; signatures are computed on congruent integer matrices
(positive diagonal rescaling never changes inertia).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Callable, Iterable, Sequence

import numpy as np

from .clifford import MultiVector, blade_grade, blade_product
from .linalg import (
    IntRowBasis,
    as_int_vector,
    canonical_rows,
    int_matmul,
    kernel_basis,
    symmetric_signature,
    vec_max_abs,
    _INT64_LIMIT,
)
from .spinrep import SpinRep, build_rep


class NotClosedError(ValueError):
    """A subspace assumed commutator-closed fails to be one."""


Bracket = Callable[[np.ndarray, np.ndarray], np.ndarray]


# -- brackets -----------------------------------------------------------------


def _sparse_bracket(n: int) -> Bracket:
    def bracket(u: np.ndarray, v: np.ndarray) -> np.ndarray:
        acc: dict[int, int] = {}
        un = [(m, int(u[m])) for m in np.nonzero(u)[0]]
        vn = [(m, int(v[m])) for m in np.nonzero(v)[0]]
        for ma, ca in un:
            for mb, cb in vn:
                mask, sign = blade_product(int(ma), int(mb))
                acc[mask] = acc.get(mask, 0) + sign * ca * cb
                mask, sign = blade_product(int(mb), int(ma))
                acc[mask] = acc.get(mask, 0) - sign * ca * cb
        out = [0] * (1 << n)
        for m, c in acc.items():
            out[m] = c
        return as_int_vector(out)

    return bracket


def _matrix_bracket(rep: SpinRep) -> Bracket:
    def bracket(u: np.ndarray, v: np.ndarray) -> np.ndarray:
        mu = rep.matrix_int(u)
        mv = rep.matrix_int(v)
        comm = int_matmul(mu, mv) - int_matmul(mv, mu)
        return rep.coords_from_matrix_int(comm)

    return bracket


def clifford_bracket(n: int, use_rep: bool = True) -> Bracket:
    """Commutator of Cl_n on integer blade-coordinate vectors."""
    if n == 8 and use_rep:
        return _matrix_bracket(build_rep(8))
    return _sparse_bracket(n)


def mv_to_int_vector(t: MultiVector) -> np.ndarray:
    return as_int_vector(t.dense_coords())


# -- subspaces ------------------------------------------------------------------


class Subspace:
    """Linear subspace with a canonical exact basis (unit-pivot RREF rows)."""

    __slots__ = ("width", "rows", "pivots", "_int_rows", "_scales", "_lie")

    def __init__(self, width: int, rows: tuple[tuple[Fraction, ...], ...], pivots: tuple[int, ...]):
        self.width = width
        self.rows = rows
        self.pivots = pivots
        self._int_rows = None
        self._scales = None
        self._lie: dict | None = None

    @classmethod
    def zero(cls, width: int) -> "Subspace":
        return cls(width, (), ())

    @classmethod
    def from_vectors(cls, width: int, vectors: Iterable) -> "Subspace":
        basis = IntRowBasis(width)
        for v in vectors:
            basis.insert(v if isinstance(v, np.ndarray) else as_int_vector(v))
        return cls.from_basis(basis)

    @classmethod
    def from_basis(cls, basis: IntRowBasis) -> "Subspace":
        rows, pivots = canonical_rows(basis)
        return cls(basis.width, rows, pivots)

    @classmethod
    def from_multivectors(cls, mvs: Sequence[MultiVector]) -> "Subspace":
        if not mvs:
            raise ValueError("need at least one multivector to fix the ambient algebra")
        width = 1 << mvs[0].n
        return cls.from_vectors(width, (mv_to_int_vector(t) for t in mvs))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.width == other.width and self.rows == other.rows

    def __hash__(self):
        return hash((self.width, self.rows))

    def __repr__(self):
        return f"Subspace(width={self.width}, dim={self.dim})"

    def int_basis(self) -> tuple[list[np.ndarray], list[int]]:
        """Canonical rows cleared of denominators (content 1) and their scales:
        int_row_i = scale_i * row_i."""
        if self._int_rows is None:
            ints, scales = [], []
            for row in self.rows:
                den = 1
                for v in row:
                    den = den * v.denominator // _gcd(den, v.denominator)
                ints.append(as_int_vector([v * den for v in row]))
                scales.append(den)
            self._int_rows = ints
            self._scales = scales
        return self._int_rows, self._scales

    def contains_vector(self, vec) -> bool:
        v = vec if isinstance(vec, np.ndarray) else as_int_vector(vec)
        ints, _ = self.int_basis()
        return IntRowBasis.wrap(self.width, ints, self.pivots).contains(v)

    def contains(self, t: MultiVector) -> bool:
        return self.contains_vector(mv_to_int_vector(t))

    def contains_subspace(self, other: "Subspace") -> bool:
        ints, _ = other.int_basis()
        return all(self.contains_vector(v) for v in ints)

    def sum_with(self, other: "Subspace") -> "Subspace":
        if self.width != other.width:
            raise ValueError("ambient widths differ")
        a, _ = self.int_basis()
        b, _ = other.int_basis()
        return Subspace.from_vectors(self.width, list(a) + list(b))

    def perp_within(self, other: "Subspace") -> "Subspace":
        """Vectors of `other` orthogonal (dot product) to all of self."""
        if self.width != other.width:
            raise ValueError("ambient widths differ")
        mine, _ = self.int_basis()
        theirs, _ = other.int_basis()
        if not mine or not theirs:
            return other if not mine else Subspace.zero(self.width)
        w = np.array([v.astype(object) for v in theirs], dtype=object)
        m = np.array([v.astype(object) for v in mine], dtype=object)
        prod = w @ m.T  # (dim other, dim self)
        coeff_kernel = kernel_basis([list(r) for r in prod.T], len(theirs))
        vectors = [sum((int(y[i]) * theirs[i] for i in range(len(theirs))),
                       np.zeros(self.width, dtype=object)) for y in coeff_kernel]
        return Subspace.from_vectors(self.width, vectors)

    def coords_of(self, vec) -> list[Fraction] | None:
        """Coefficients against the canonical basis, or None if outside."""
        v = vec if isinstance(vec, np.ndarray) else as_int_vector(vec)
        coords = [Fraction(int(v[p])) for p in self.pivots]
        rec = [Fraction(0)] * self.width
        for c, row in zip(coords, self.rows):
            if c:
                rec = [a + c * b for a, b in zip(rec, row)]
        if any(Fraction(int(x)) != y for x, y in zip(v.flat, rec)):
            return None
        return coords

    def basis_multivectors(self, n: int) -> list[MultiVector]:
        if 1 << n != self.width:
            raise ValueError(f"subspace width {self.width} is not 2^{n}")
        return [MultiVector.from_dense(n, row) for row in self.rows]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def grade_parity_signs(n: int) -> np.ndarray:
    """(-1)^grade per blade coordinate."""
    return np.array([-1 if blade_grade(m) & 1 else 1 for m in range(1 << n)], dtype=np.int64)


def reversal_signs(n: int) -> np.ndarray:
    return np.array([-1 if (blade_grade(m) * (blade_grade(m) - 1) // 2) & 1 else 1
                     for m in range(1 << n)], dtype=np.int64)


# -- closure --------------------------------------------------------------------


def close_span(generators: Sequence[MultiVector], *, use_rep: bool = True) -> Subspace:
    """Smallest commutator-closed subspace containing the generators.

    Deterministic for a deterministic generator order; the bracket of every
    pair of retained basis elements is reduced into the span, so the result is
    a fixpoint by construction, and those brackets also yield the derived
    algebra, cached on the result.
    """
    gens = [t for t in generators]
    if not gens:
        raise ValueError("need at least one generator to fix the ambient algebra")
    n = gens[0].n
    bracket = clifford_bracket(n, use_rep=use_rep)
    vectors = [mv_to_int_vector(t) for t in gens]
    return _close_vectors(n, vectors, bracket)


def _close_vectors(n: int, vectors: list[np.ndarray], bracket: Bracket) -> Subspace:
    width = 1 << n
    basis = IntRowBasis(width)
    derived = IntRowBasis(width)
    elems: list[np.ndarray] = []
    queue: list[tuple[int, int]] = []
    for v in vectors:
        r = basis.insert(v)
        if r is not None:
            k = len(elems)
            elems.append(r)
            queue.extend((i, k) for i in range(k))
    head = 0
    while head < len(queue):
        i, j = queue[head]
        head += 1
        w = bracket(elems[i], elems[j])
        if not w.any():
            continue
        derived.insert(w)
        r = basis.insert(w)
        if r is not None:
            k = len(elems)
            elems.append(r)
            queue.extend((t, k) for t in range(k))
    sub = Subspace.from_basis(basis)
    sub._lie = {
        "n": n,
        "bracket": bracket,
        "derived": Subspace.from_basis(derived),
    }
    return sub


def _resolve_bracket(g: Subspace, n: int | None) -> tuple[int, Bracket]:
    if g._lie is not None:
        return g._lie["n"], g._lie["bracket"]
    if n is None:
        w = g.width
        n = w.bit_length() - 1
        if 1 << n != w or not 1 <= n <= 10:
            raise ValueError("cannot infer the Clifford dimension; pass n explicitly")
    return n, clifford_bracket(n)


# -- structure constantsic ---------------------------------------------------


def structure_data(g: Subspace, *, n: int | None = None, want_derived: bool = False) -> dict:
    """Integer structure tensor of a closed subspace w.r.t. its scaled basis.

    tensor[i,k,l] = coefficient of canonical row l in [w_i, w_k], an integer;
    the structure constant on canonical rows is tensor[i,k,l] / (a_i a_k).
    Membership of every bracket is verified exactly; raises NotClosedError
    otherwise.  With want_derived, the span of all brackets is cached too.
    """
    if g._lie is not None and "structure" in g._lie:
        if not want_derived or g._lie.get("derived") is not None:
            return g._lie["structure"]
    n, bracket = _resolve_bracket(g, n)
    d = g.dim
    ints, scales = g.int_basis()
    kern = kernel_basis([list(map(int, r.flat)) for r in ints], g.width) if d else []
    kmat_obj = np.array([k.astype(object) for k in kern], dtype=object) if kern else None
    kmat_64 = None
    kmax = 0
    if kern and all(k.dtype != object for k in kern):
        kmat_64 = np.array([k for k in kern], dtype=np.int64)
        kmax = int(np.abs(kmat_64).max()) if kmat_64.size else 0
    have_derived = g._lie is not None and g._lie.get("derived") is not None
    ech = IntRowBasis(g.width) if want_derived and not have_derived else None
    tensor = np.zeros((d, d, d), dtype=np.int64)
    obj = False
    for i in range(d):
        for k in range(i + 1, d):
            w = bracket(ints[i], ints[k])
            if w.any():
                if not _in_rowspace(w, kmat_64, kmax, kmat_obj):
                    raise NotClosedError("bracket of basis elements leaves the subspace")
                if ech is not None:
                    ech.insert(w)
            coords = [int(w[p]) for p in g.pivots]
            for l, c in enumerate(coords):
                if c:
                    try:
                        tensor[i, k, l] = c
                        tensor[k, i, l] = -c
                    except OverflowError:
                        if not obj:
                            tensor = tensor.astype(object)
                            obj = True
                        tensor[i, k, l] = c
                        tensor[k, i, l] = -c
    data = {"tensor": tensor, "scales": scales, "n": n}
    if g._lie is None:
        g._lie = {"n": n, "bracket": bracket}
    g._lie["structure"] = data
    if ech is not None:
        g._lie["derived"] = Subspace.from_basis(ech)
    return data


def _in_rowspace(w: np.ndarray, kmat_64, kmax: int, kmat_obj) -> bool:
    """Whether w is orthogonal to the cached kernel of the row space."""
    if kmat_obj is None:
        return True
    if kmat_64 is not None and w.dtype != object:
        wmax = int(np.abs(w).max()) if w.size else 0
        if w.shape[0] * kmax * wmax < _INT64_LIMIT:
            return not (kmat_64 @ w).any()
    resid = kmat_obj @ w.astype(object)
    return not any(x != 0 for x in resid.flat)


def derived_and_center(g: Subspace, *, n: int | None = None) -> tuple[Subspace, Subspace, bool]:
    """Derived algebra, center, and perfectness flag of a closed subspace."""
    if g.dim == 0:
        z = Subspace.zero(g.width)
        return z, z, True
    structure_data(g, n=n, want_derived=True)  # verifies closedness, caches both
    derived = g._lie["derived"]
    center = _center_subspace(g)
    is_perfect = derived == g
    return derived, center, is_perfect


def _center_subspace(g: Subspace) -> Subspace:
    data = structure_data(g)
    tensor = data["tensor"]
    d = g.dim
    x_mat = np.eye(d, dtype=np.int64)
    for k in range(d):
        if x_mat.shape[0] == 0:
            break
        m = int_matmul(x_mat, tensor[:, k, :])
        kern = kernel_basis([list(col) for col in m.T], x_mat.shape[0])
        if len(kern) == x_mat.shape[0]:
            continue
        if not kern:
            x_mat = np.zeros((0, d), dtype=np.int64)
            break
        kmat = np.array([k_ for k_ in kern], dtype=object) \
            if any(k_.dtype == object for k_ in kern) else np.array(kern, dtype=np.int64)
        x_mat = int_matmul(kmat, x_mat)
    if x_mat.shape[0] == 0:
        return Subspace.zero(g.width)
    ints, _ = g.int_basis()
    vectors = [sum((int(y[i]) * ints[i].astype(object) for i in range(d) if y[i]),
                   np.zeros(g.width, dtype=object)) for y in x_mat]
    return Subspace.from_vectors(g.width, vectors)


# -- invariant forms ----------------------------------------------------------


def beta_gram(g: Subspace, n: int) -> np.ndarray:
    """Integer matrix congruent to the form <ϕ, grade_involution(ψ)> on g."""
    ints, _ = g.int_basis()
    signs = grade_parity_signs(n)
    if all(v.dtype != object for v in ints):
        w = np.array(ints, dtype=np.int64)
        mx = int(np.abs(w).max()) if w.size else 0
        if g.width * mx * mx < _INT64_LIMIT:
            return (w * signs) @ w.T
    w = np.array([v.astype(object) for v in ints], dtype=object)
    return (w * signs.astype(object)) @ w.T


def killing_gram(g: Subspace, *, n: int | None = None) -> np.ndarray:
    """Integer matrix congruent to the Killing form Tr(ad ad) on g."""
    data = structure_data(g, n=n)
    tensor = data["tensor"]
    scales = data["scales"]
    d = g.dim
    if d == 0:
        return np.zeros((0, 0), dtype=np.int64)
    lcm = 1
    for a in scales:
        lcm = lcm * a // _gcd(lcm, a)
    factors = [lcm // a for a in scales]
    maxf = max(factors)
    if tensor.dtype != object:
        maxt = int(np.abs(tensor).max()) if tensor.size else 0
        mx = maxt * maxf
        if mx < _INT64_LIMIT and d * d * mx * mx < _INT64_LIMIT:
            scaled = tensor * np.array(factors, dtype=np.int64)[None, :, None]
            return np.einsum("ikl,jlk->ij", scaled, scaled)
    scaled = tensor.astype(object) * np.array(factors, dtype=object)[None, :, None]
    out = np.zeros((d, d), dtype=object)
    for i in range(d):
        si = scaled[i]
        for j in range(i, d):
            val = (si * scaled[j].T).sum()
            out[i, j] = val
            out[j, i] = val
    return out


def invariant_form_signature(g: Subspace, *, n: int | None = None,
                             check_invariance: bool = True) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
    """Signatures (pos, neg, zero) of the β form and the Killing form on g."""
    n, bracket = _resolve_bracket(g, n)
    if g.dim == 0:
        return (0, 0, 0), (0, 0, 0)
    bsig = symmetric_signature(beta_gram(g, n))
    ksig = symmetric_signature(killing_gram(g, n=n))
    if check_invariance and g.dim >= 2:
        _check_beta_invariance(g, n, bracket)
    return bsig, ksig


def _check_beta_invariance(g: Subspace, n: int, bracket: Bracket, samples: int = 6) -> None:
    rng = random.Random(0)
    ints, _ = g.int_basis()
    signs = grade_parity_signs(n)

    def beta(u: np.ndarray, v: np.ndarray) -> int:
        return int((u.astype(object) * signs * v.astype(object)).sum())

    d = len(ints)
    for _ in range(samples):
        a, b, c = (ints[rng.randrange(d)] for _ in range(3))
        if beta(bracket(a, b), c) != -beta(bracket(a, c), b):
            raise AssertionError("β fails its invariance identity on this subspace")


# -- descriptors -----------------------------------------------------------------


@dataclass(frozen=True)
class LieDescriptor:
    dim: int
    dim_even: int
    dim_odd: int
    beta_signature: tuple[int, int, int]
    killing_signature: tuple[int, int, int]
    center_dim: int
    derived_dim: int
    label: str

    def to_record(self) -> dict:
        return {
            "dim": self.dim,
            "dim_even": self.dim_even,
            "dim_odd": self.dim_odd,
            "beta_signature": list(self.beta_signature),
            "killing_signature": list(self.killing_signature),
            "center_dim": self.center_dim,
            "derived_dim": self.derived_dim,
            "label": self.label,
        }


def so_label(p: int, q: int) -> str:
    p, q = max(p, q), min(p, q)
    return f"so({p})" if q == 0 else f"so({p},{q})"


def _so_candidates(dim: int) -> list[tuple[int, int]]:
    disc = 1 + 8 * dim
    root = isqrt(disc)
    if root * root != disc:
        return []
    m = (1 + root) // 2
    if m < 3 or m * (m - 1) // 2 != dim:
        return []
    return [(p, m - p) for p in range(m, (m - 1) // 2, -1)]


def classify_label(dim: int, derived_dim: int, killing_sig: tuple[int, int, int]) -> str:
    if dim == 0:
        return "zero"
    if derived_dim == 0:
        return f"abelian({dim})"
    matches = []
    for p, q in _so_candidates(dim):
        expected = (p * q, p * (p - 1) // 2 + q * (q - 1) // 2, 0)
        if killing_sig == expected:
            matches.append((p, q))
    if len(matches) == 1:
        return so_label(*matches[0])
    return f"unknown(dim={dim},killing={killing_sig})"


def even_odd_dims(g: Subspace, n: int) -> tuple[int, int]:
    """Dimensions of g ∩ (even part) and g ∩ (odd part)."""
    if g.dim == 0:
        return 0, 0
    ints, _ = g.int_basis()
    odd_cols = [m for m in range(1 << n) if blade_grade(m) & 1]
    even_cols = [m for m in range(1 << n) if not blade_grade(m) & 1]
    w = np.array([v.astype(object) for v in ints], dtype=object)

    def part_dim(cols):
        if not cols:
            return g.dim
        block = w[:, cols]
        return len(kernel_basis([list(col) for col in block.T], g.dim))

    return part_dim(odd_cols), part_dim(even_cols)


def parity_parts(g: Subspace, n: int) -> tuple[Subspace, Subspace]:
    """Subspaces g ∩ (even part) and g ∩ (odd part) of Cl_n."""
    if g.dim == 0:
        return Subspace.zero(g.width), Subspace.zero(g.width)
    ints, _ = g.int_basis()
    w = np.array([v.astype(object) for v in ints], dtype=object)

    def part(cols):
        if not cols:
            return Subspace.from_vectors(g.width, ints)
        block = w[:, cols]
        kern = kernel_basis([list(col) for col in block.T], g.dim)
        vectors = [sum((int(y[i]) * ints[i].astype(object) for i in range(g.dim)),
                       np.zeros(g.width, dtype=object)) for y in kern]
        return Subspace.from_vectors(g.width, vectors) if vectors else Subspace.zero(g.width)

    odd_cols = [m for m in range(1 << n) if blade_grade(m) & 1]
    even_cols = [m for m in range(1 << n) if not blade_grade(m) & 1]
    return part(odd_cols), part(even_cols)


def classify(g: Subspace, *, n: int | None = None) -> LieDescriptor:
    """Descriptor with dimension data, both signatures, and a label."""
    n, _ = _resolve_bracket(g, n)
    if g.dim == 0:
        return LieDescriptor(0, 0, 0, (0, 0, 0), (0, 0, 0), 0, 0, "zero")
    derived, center, _ = derived_and_center(g, n=n)
    bsig, ksig = invariant_form_signature(g, n=n)
    dim_even, dim_odd = even_odd_dims(g, n)
    label = classify_label(g.dim, derived.dim, ksig)
    return LieDescriptor(
        dim=g.dim,
        dim_even=dim_even,
        dim_odd=dim_odd,
        beta_signature=bsig,
        killing_signature=ksig,
        center_dim=center.dim,
        derived_dim=derived.dim,
        label=label,
    )


# -- the model algebra ---------------------------------------------------------


@dataclass(frozen=True)
class ModelAlgebra:
    """Antisymmetric part of Cl_n under reversal, with its parity split."""

    space: Subspace
    even: Subspace
    odd: Subspace


def model_algebra(n: int) -> ModelAlgebra:
    width = 1 << n
    rev = reversal_signs(n)
    masks = [m for m in range(width) if rev[m] < 0]

    def unit(mask):
        v = np.zeros(width, dtype=np.int64)
        v[mask] = 1
        return v

    all_rows = [unit(m) for m in masks]
    even_rows = [unit(m) for m in masks if not blade_grade(m) & 1]
    odd_rows = [unit(m) for m in masks if blade_grade(m) & 1]
    return ModelAlgebra(
        space=Subspace.from_vectors(width, all_rows),
        even=Subspace.from_vectors(width, even_rows),
        odd=Subspace.from_vectors(width, odd_rows),
    )

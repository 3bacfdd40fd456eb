"""Matrix models of the irreducible real Cl_n modules for n in {6, 7, 8}.

Generators are built from octonion left-multiplication tables (signed
permutation matrices), so every blade acts by a signed permutation and all
arithmetic stays integral.  The n = 8 volume element acts as diag(I_8, -I_8),
the n = 7 one as +Id; both facts are forced at construction and revalidated.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .clifford import MultiVector, blade_grade
from .linalg import int_matmul

SUPPORTED_DIMS = (6, 7, 8)

CONVENTION_TAG = "e²=−1, ν=+1 for n≡3(4)"
CACHE_VERSION = 1
CACHE_ENV_VAR = "SPINHOL_CACHE"

# Oriented Fano triples: e_a e_b = e_c cyclically for each line.
_FANO_TRIPLES = ((1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3))


class UnsupportedDimensionError(ValueError):
    """No spinor representation is provided for this dimension."""


class ChiralityError(ValueError):
    """A spinor does not have the half-spinor type an operation requires."""


class CacheError(RuntimeError):
    """The on-disk representation cache could not be used."""


def _octonion_left_matrices() -> list[np.ndarray]:
    """8x8 matrices of left multiplication by the 7 imaginary units."""
    table: dict[tuple[int, int], tuple[int, int]] = {}
    for i in range(8):
        table[(0, i)] = (i, 1)
        table[(i, 0)] = (i, 1)
    for i in range(1, 8):
        table[(i, i)] = (0, -1)
    for (a, b, c) in _FANO_TRIPLES:
        for (x, y, z) in ((a, b, c), (b, c, a), (c, a, b)):
            table[(x, y)] = (z, 1)
            table[(y, x)] = (z, -1)
    mats = []
    for i in range(1, 8):
        m = np.zeros((8, 8), dtype=np.int64)
        for j in range(8):
            k, s = table[(i, j)]
            m[k, j] = s
        mats.append(m)
    return mats


def _generator_matrices(n: int) -> list[np.ndarray]:
    ls = _octonion_left_matrices()
    ls[6] = -ls[6]  # orient so the volume element acts as +Id on the octonion block
    if n in (6, 7):
        return ls[:n]
    blocks = [np.eye(8, dtype=np.int64)] + ls
    gens = []
    for a in blocks:
        g = np.zeros((16, 16), dtype=np.int64)
        g[:8, 8:] = a
        g[8:, :8] = -a.T
        gens.append(g)
    return gens


class SpinRep:
    """Irreducible real Cl_n module given by explicit generator matrices."""

    def __init__(self, n: int, generators: Sequence[np.ndarray]):
        if n not in SUPPORTED_DIMS:
            raise UnsupportedDimensionError(f"n = {n}; supported: {SUPPORTED_DIMS}")
        self.n = n
        self.dim_s = 16 if n == 8 else 8
        self.generators = tuple(np.array(g, dtype=np.int64) for g in generators)
        self._build_blade_tables()
        self.nu_action = self.blade_matrix((1 << n) - 1)
        self._validate()

    # -- blade action ---------------------------------------------------

    def _build_blade_tables(self):
        d = self.dim_s
        nblades = 1 << self.n
        perm = np.zeros((nblades, d), dtype=np.int64)
        sign = np.zeros((nblades, d), dtype=np.int64)
        perm[0] = np.arange(d)
        sign[0] = 1
        gen_perm = []
        gen_sign = []
        for g in self.generators:
            p = np.zeros(d, dtype=np.int64)
            s = np.zeros(d, dtype=np.int64)
            for j in range(d):
                col = g[:, j]
                (k,) = np.nonzero(col)[0]
                p[j] = k
                s[j] = col[k]
            gen_perm.append(p)
            gen_sign.append(s)
        for mask in range(1, nblades):
            low = (mask & -mask).bit_length() - 1
            rest = mask & (mask - 1)
            pr, sr = perm[rest], sign[rest]
            perm[mask] = gen_perm[low][pr]
            sign[mask] = gen_sign[low][pr] * sr
        self._perm = perm
        self._sign = sign
        # flattened gather indices: blade matrix entry (perm[m,j], j)
        self._gather = perm * d + np.arange(d)[None, :]

    def blade_matrix(self, mask: int) -> np.ndarray:
        d = self.dim_s
        m = np.zeros((d, d), dtype=np.int64)
        m[self._perm[mask], np.arange(d)] = self._sign[mask]
        return m

    def matrix_int(self, coords: np.ndarray) -> np.ndarray:
        """Matrix of an integer-coefficient multivector in blade coordinates."""
        d = self.dim_s
        flat = np.zeros(d * d, dtype=coords.dtype if coords.dtype == object else np.int64)
        nz = np.nonzero(coords)[0]
        if len(nz):
            contrib = coords[nz, None] * self._sign[nz]
            np.add.at(flat, self._gather[nz], contrib)
        return flat.reshape(d, d)

    def coords_from_matrix_int(self, matrix: np.ndarray) -> np.ndarray:
        """Blade coordinates of an integer matrix known to represent a
        multivector (n = 8) or a self-dual multivector (n = 7)."""
        if self.n == 6:
            raise UnsupportedDimensionError("coordinate recovery needs n in {7, 8}")
        flat = matrix.reshape(-1)
        sums = (flat[self._gather] * self._sign).sum(axis=1)
        if (np.asarray(sums) % 16 != 0).any():
            raise ValueError("matrix is not in the exact image of the blade basis")
        return sums // 16

    def matrix(self, t: MultiVector) -> np.ndarray:
        """Matrix of any multivector; object array of Fractions."""
        if t.n != self.n:
            raise UnsupportedDimensionError(f"multivector in Cl_{t.n}, representation for Cl_{self.n}")
        d = self.dim_s
        flat = np.array([Fraction(0)] * (d * d), dtype=object)
        for mask, c in t.terms():
            idx = self._gather[mask]
            sgn = self._sign[mask]
            for j in range(d):
                flat[idx[j]] += c * int(sgn[j])
        return flat.reshape(d, d)

    def multivector_from_matrix(self, matrix: np.ndarray) -> MultiVector:
        """Exact inverse of `matrix` for n = 8 (self-dual preimage for n = 7)."""
        if self.n == 6:
            raise UnsupportedDimensionError("matrix inversion to Cl_n needs n in {7, 8}")
        flat = np.asarray(matrix, dtype=object).reshape(-1)
        coeffs = {}
        for mask in range(1 << self.n):
            total = sum(int(s) * flat[g] for s, g in zip(self._sign[mask], self._gather[mask]))
            c = Fraction(total, 16) if not isinstance(total, Fraction) else total / 16
            if c:
                coeffs[mask] = c
        return MultiVector(self.n, coeffs)

    # -- chirality -------------------------------------------------------

    def chirality(self, coords: Sequence) -> int:
        """+1 / -1 for pure half-spinors (n = 8), 0 for mixed or zero."""
        if self.n != 8:
            raise UnsupportedDimensionError("chirality split needs n = 8")
        upper = any(bool(c) for c in coords[:8])
        lower = any(bool(c) for c in coords[8:])
        if upper and not lower:
            return 1
        if lower and not upper:
            return -1
        return 0

    def splus_coords(self) -> range:
        return range(0, 8)

    def sminus_coords(self) -> range:
        return range(8, 16)

    # -- validation --------------------------------------------------------

    def _validate(self):
        d = self.dim_s
        eye = np.eye(d, dtype=np.int64)
        for i, gi in enumerate(self.generators):
            if not np.array_equal(gi.T, -gi):
                raise CacheError(f"generator {i+1} is not skew-symmetric")
            for j, gj in enumerate(self.generators):
                anti = int_matmul(gi, gj) + int_matmul(gj, gi)
                if not np.array_equal(anti, -2 * (i == j) * eye):
                    raise CacheError(f"Clifford relation fails for generators {i+1}, {j+1}")
        if self.n == 7 and not np.array_equal(self.nu_action, eye):
            raise CacheError("volume element of the n=7 module must act as +Id")
        if self.n == 8:
            expected = np.diag([1] * 8 + [-1] * 8).astype(np.int64)
            if not np.array_equal(self.nu_action, expected):
                raise CacheError("volume element of the n=8 module must act as diag(I, -I)")
        self._validate_blade_gram()

    def _validate_blade_gram(self):
        """Pairwise trace-orthogonality of blade matrices.

        Gram = dim_s * I over the faithful blade family, which pins down both
        injectivity of the action on that span and a 1-dimensional commutant.
        """
        if self.n == 7:
            masks = [m for m in range(1 << self.n) if blade_grade(m) <= 3]
        else:
            masks = list(range(1 << self.n))
        d = self.dim_s
        flat = np.zeros((len(masks), d * d), dtype=np.int64)
        for row, mask in enumerate(masks):
            flat[row, self._gather[mask]] = self._sign[mask]
        gram = flat @ flat.T
        if not np.array_equal(gram, d * np.eye(len(masks), dtype=np.int64)):
            raise CacheError("blade matrices are not trace-orthogonal")


# -- cache -------------------------------------------------------------------


def cache_directory(override: str | os.PathLike | None = None) -> Path:
    if override is not None:
        return Path(override)
    env = os.environ.get(CACHE_ENV_VAR)
    if env:
        return Path(env)
    root = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(root) / "spinhol"


def _cache_payload(rep: SpinRep) -> dict:
    def matrix_record(m: np.ndarray) -> list:
        return [[[int(v), 1] for v in row] for row in m.tolist()]

    return {
        "version": CACHE_VERSION,
        "n": rep.n,
        "dim_s": rep.dim_s,
        "convention": CONVENTION_TAG,
        "generators": [matrix_record(g) for g in rep.generators],
        "nu_action": matrix_record(rep.nu_action),
    }


def _rep_from_payload(payload: dict) -> SpinRep:
    if payload.get("version") != CACHE_VERSION:
        raise CacheError(f"cache version {payload.get('version')} != {CACHE_VERSION}")
    if payload.get("convention") != CONVENTION_TAG:
        raise CacheError("cache written under a different sign convention")
    n = payload["n"]
    gens = []
    for g in payload["generators"]:
        rows = []
        for row in g:
            vals = []
            for num, den in row:
                if den != 1:
                    raise CacheError("generator entries must be integers in this model")
                vals.append(int(num))
            rows.append(vals)
        gens.append(np.array(rows, dtype=np.int64))
    rep = SpinRep(n, gens)
    nu = [[int(num) for num, _ in row] for row in payload["nu_action"]]
    if not np.array_equal(rep.nu_action, np.array(nu, dtype=np.int64)):
        raise CacheError("cached nu_action disagrees with the generators")
    return rep


_REPS: dict[tuple[int, str], SpinRep] = {}


def build_rep(n: int, cache_dir: str | os.PathLike | None = None) -> SpinRep:
    """Representation for n in {6,7,8}, cached in memory and on disk."""
    if n not in SUPPORTED_DIMS:
        raise UnsupportedDimensionError(f"n = {n}; supported: {SUPPORTED_DIMS}")
    directory = cache_directory(cache_dir)
    key = (n, str(directory))
    if key in _REPS:
        return _REPS[key]
    path = directory / f"spinrep_n{n}.json"
    rep = None
    if path.exists():
        try:
            payload = json.loads(path.read_text())
            rep = _rep_from_payload(payload)
        except (CacheError, ValueError, KeyError, TypeError, json.JSONDecodeError):
            rep = None  # stale or foreign cache: rebuild below and replace
    if rep is None:
        rep = SpinRep(n, _generator_matrices(n))
        directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(_cache_payload(rep), fh)
        os.replace(tmp, path)
    _REPS[key] = rep
    return rep


# -- spinors -------------------------------------------------------------------


@dataclass(frozen=True)
class Spinor:
    rep: SpinRep
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.rep.dim_s:
            raise ValueError(f"expected {self.rep.dim_s} coordinates")
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def norm_sq(self) -> Fraction:
        return sum((c * c for c in self.coords), Fraction(0))

    def chirality(self) -> int:
        return self.rep.chirality(self.coords)


def _coords_of(rep: SpinRep, x) -> tuple[Fraction, ...]:
    if isinstance(x, Spinor):
        if x.rep.n != rep.n:
            raise UnsupportedDimensionError("spinor belongs to a different representation")
        return x.coords
    coords = tuple(Fraction(c) for c in x)
    if len(coords) != rep.dim_s:
        raise ValueError(f"expected {rep.dim_s} coordinates")
    return coords


def mu_matrix(rep: SpinRep, t: MultiVector) -> np.ndarray:
    """Matrix of left Clifford multiplication by t."""
    return rep.matrix(t)


def mu_inverse(rep: SpinRep, matrix: np.ndarray) -> MultiVector:
    """The unique multivector with the given matrix (n = 8 only)."""
    if rep.n != 8:
        raise UnsupportedDimensionError("mu is a bijection onto End(S) only for n = 8")
    t = rep.multivector_from_matrix(matrix)
    return t


def apply_to_spinor(rep: SpinRep, t: MultiVector, coords) -> tuple[Fraction, ...]:
    xs = _coords_of(rep, coords)
    out = [Fraction(0)] * rep.dim_s
    for mask, c in t.terms():
        perm = rep._perm[mask]
        sgn = rep._sign[mask]
        for j, xj in enumerate(xs):
            if xj:
                out[perm[j]] += c * int(sgn[j]) * xj
    return tuple(out)


def sandwich_constant(n: int) -> Fraction:
    """Scale in the rank-one sandwich identity for spinor squares."""
    if n % 8 == 0:
        return Fraction(2 ** (n // 2))
    if n % 8 == 7:
        return Fraction(2 ** ((n + 1) // 2))
    raise UnsupportedDimensionError(f"no squaring construction for n = {n}")


def _outer(rep: SpinRep, left, right) -> np.ndarray:
    a = np.array(left, dtype=object)
    b = np.array(right, dtype=object)
    return np.outer(a, b)


def spinor_square(rep: SpinRep, x) -> MultiVector:
    """Multivector acting as the rank-one projection psi -> <psi, x> x.

    Needs |x| = 1; for n = 8 the spinor must be a positive half-spinor.
    """
    if rep.n not in (7, 8):
        raise UnsupportedDimensionError("spinor squares exist for n in {7, 8} here")
    xs = _coords_of(rep, x)
    norm = sum((c * c for c in xs), Fraction(0))
    if norm != 1:
        raise ValueError(f"spinor square needs a unit spinor, |x|^2 = {norm}")
    if rep.n == 8 and rep.chirality(xs) != 1:
        raise ChiralityError("spinor square needs x in the positive half-spinor space")
    return rep.multivector_from_matrix(_outer(rep, xs, xs))


def wedge_spinors(rep: SpinRep, x, y) -> MultiVector:
    """Multivector acting as psi -> <psi, x> y - <psi, y> x (n = 8, S+)."""
    if rep.n != 8:
        raise UnsupportedDimensionError("spinor wedges are defined here for n = 8")
    xs, ys = _coords_of(rep, x), _coords_of(rep, y)
    for z in (xs, ys):
        if any(z[8:]):
            raise ChiralityError("spinor wedge needs positive half-spinors")
    m = _outer(rep, ys, xs) - _outer(rep, xs, ys)
    return rep.multivector_from_matrix(m)


def sym_spinors(rep: SpinRep, x, y) -> MultiVector:
    """Multivector acting as psi -> <psi, x> y + <psi, y> x (n = 8)."""
    if rep.n != 8:
        raise UnsupportedDimensionError("symmetric spinor products are defined here for n = 8")
    xs, ys = _coords_of(rep, x), _coords_of(rep, y)
    for z in (xs, ys):
        if rep.chirality(z) == 0:
            raise ChiralityError("symmetric product needs pure half-spinors")
    m = _outer(rep, ys, xs) + _outer(rep, xs, ys)
    return rep.multivector_from_matrix(m)


def bilinear_spinor_products(rep: SpinRep, x, y) -> tuple[MultiVector, MultiVector]:
    return wedge_spinors(rep, x, y), sym_spinors(rep, x, y)


@dataclass(frozen=True)
class SpinPairing:
    """Split-signature pairing <nu x, y> on the n = 8 module."""

    beta_hat: tuple[tuple[int, ...], ...]

    @classmethod
    def for_rep(cls, rep: SpinRep) -> "SpinPairing":
        if rep.n != 8:
            raise UnsupportedDimensionError("the chirality pairing needs n = 8")
        m = rep.nu_action
        if not np.array_equal(m, m.T):
            raise ValueError("pairing matrix must be symmetric")
        return cls(tuple(tuple(int(v) for v in row) for row in m))

    def signature(self) -> tuple[int, int, int]:
        from .linalg import symmetric_signature

        return symmetric_signature([list(r) for r in self.beta_hat])

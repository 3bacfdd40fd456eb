"""Exact Clifford algebra arithmetic over the rationals.

Cl_n is modelled on the 2^n-dimensional space of blade coefficients with
negative-definite generators (every unit basis vector squares to -1).  A blade
is a bitmask over the basis indices {1..n}; coefficients are `Fraction`s kept
in lowest terms and zero coefficients are never stored.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping

MAX_DIM = 10

_ZERO = Fraction(0)
_ONE = Fraction(1)


class DimensionMismatchError(ValueError):
    """Operands live in Clifford algebras of different dimension."""


class GradeError(ValueError):
    """An argument does not have the grade an operation requires."""


def _coerce(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an int or Fraction coefficient, got {type(value).__name__}")


def blade_grade(mask: int) -> int:
    return mask.bit_count()


def blade_product(a: int, b: int) -> tuple[int, int]:
    """Mask and sign of the product of two basis blades.

    Sign = parity of the transpositions needed to sort the concatenated index
    sequence, times (-1) for every repeated index pair (e_i e_i = -1).
    """
    swaps = 0
    rest = b
    while rest:
        low = rest & -rest
        swaps += (a >> low.bit_length()).bit_count()
        rest ^= low
    sign = -1 if swaps & 1 else 1
    if (a & b).bit_count() & 1:
        sign = -sign
    return a ^ b, sign


def mask_from_indices(indices: Iterable[int], n: int) -> int:
    mask = 0
    for i in indices:
        if not 1 <= i <= n:
            raise ValueError(f"basis index {i} out of range 1..{n}")
        bit = 1 << (i - 1)
        if mask & bit:
            raise ValueError(f"repeated basis index {i}")
        mask |= bit
    return mask


def indices_from_mask(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


class MultiVector:
    """Immutable element of Cl_n with sparse exact-rational coefficients."""

    __slots__ = ("n", "_coeffs")

    def __init__(self, n: int, coeffs: Mapping[int, Fraction] | None = None, _trusted: bool = False):
        if not 1 <= n <= MAX_DIM:
            raise ValueError(f"dimension {n} outside supported range 1..{MAX_DIM}")
        object.__setattr__(self, "n", n)
        if _trusted:
            object.__setattr__(self, "_coeffs", coeffs if coeffs is not None else {})
            return
        clean: dict[int, Fraction] = {}
        top = 1 << n
        for mask, value in (coeffs or {}).items():
            if not 0 <= mask < top:
                raise ValueError(f"blade mask {mask} outside Cl_{n}")
            c = _coerce(value)
            if c:
                clean[mask] = c
        object.__setattr__(self, "_coeffs", clean)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("MultiVector is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "MultiVector":
        return cls(n, {}, _trusted=True)

    @classmethod
    def scalar(cls, n: int, value) -> "MultiVector":
        c = _coerce(value)
        return cls(n, {0: c} if c else {}, _trusted=True)

    @classmethod
    def basis_vector(cls, n: int, i: int) -> "MultiVector":
        return cls.blade(n, (i,))

    @classmethod
    def blade(cls, n: int, indices: Iterable[int], coeff=1) -> "MultiVector":
        c = _coerce(coeff)
        if not c:
            return cls.zero(n)
        return cls(n, {mask_from_indices(indices, n): c}, _trusted=True)

    @classmethod
    def from_mask(cls, n: int, mask: int, coeff=1) -> "MultiVector":
        c = _coerce(coeff)
        mv = cls(n, {mask: c} if c else {})
        return mv

    @classmethod
    def from_dense(cls, n: int, coords: Iterable) -> "MultiVector":
        coeffs = {}
        for mask, value in enumerate(coords):
            c = _coerce(value)
            if c:
                coeffs[mask] = c
        return cls(n, coeffs, _trusted=True)

    # -- basic access --------------------------------------------------

    def coeff(self, mask: int) -> Fraction:
        return self._coeffs.get(mask, _ZERO)

    def terms(self) -> Iterator[tuple[int, Fraction]]:
        return iter(sorted(self._coeffs.items()))

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self._coeffs))

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def grades(self) -> tuple[int, ...]:
        return tuple(sorted({blade_grade(m) for m in self._coeffs}))

    def dense_coords(self) -> tuple[Fraction, ...]:
        top = 1 << self.n
        out = [_ZERO] * top
        for mask, c in self._coeffs.items():
            out[mask] = c
        return tuple(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiVector):
            return NotImplemented
        return self.n == other.n and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.n, frozenset(self._coeffs.items())))

    def __repr__(self) -> str:
        if not self._coeffs:
            return f"MultiVector(Cl_{self.n}: 0)"
        parts = []
        for mask, c in sorted(self._coeffs.items()):
            name = "1" if mask == 0 else "e" + "".join(str(i) for i in indices_from_mask(mask))
            parts.append(f"{c}*{name}")
        return f"MultiVector(Cl_{self.n}: " + " + ".join(parts) + ")"

    # -- linear structure ----------------------------------------------

    def _check(self, other: "MultiVector") -> None:
        if self.n != other.n:
            raise DimensionMismatchError(f"Cl_{self.n} vs Cl_{other.n}")

    def __add__(self, other: "MultiVector") -> "MultiVector":
        if not isinstance(other, MultiVector):
            return NotImplemented
        self._check(other)
        out = dict(self._coeffs)
        for mask, c in other._coeffs.items():
            s = out.get(mask, _ZERO) + c
            if s:
                out[mask] = s
            else:
                out.pop(mask, None)
        return MultiVector(self.n, out, _trusted=True)

    def __sub__(self, other: "MultiVector") -> "MultiVector":
        if not isinstance(other, MultiVector):
            return NotImplemented
        self._check(other)
        out = dict(self._coeffs)
        for mask, c in other._coeffs.items():
            s = out.get(mask, _ZERO) - c
            if s:
                out[mask] = s
            else:
                out.pop(mask, None)
        return MultiVector(self.n, out, _trusted=True)

    def __neg__(self) -> "MultiVector":
        return MultiVector(self.n, {m: -c for m, c in self._coeffs.items()}, _trusted=True)

    def scale(self, value) -> "MultiVector":
        c = _coerce(value)
        if not c:
            return MultiVector.zero(self.n)
        return MultiVector(self.n, {m: c * v for m, v in self._coeffs.items()}, _trusted=True)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    # -- products --------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MultiVector):
            return NotImplemented
        return geometric_product(self, other)

    def wedge(self, other: "MultiVector") -> "MultiVector":
        return wedge(self, other)

    # -- involutions and gradings ----------------------------------------

    def grade_project(self, k: int) -> "MultiVector":
        if not 0 <= k <= self.n:
            raise GradeError(f"grade {k} outside 0..{self.n}")
        kept = {m: c for m, c in self._coeffs.items() if blade_grade(m) == k}
        return MultiVector(self.n, kept, _trusted=True)

    def reverse(self) -> "MultiVector":
        """Anti-automorphism flipping each grade-k part by (-1)^(k(k-1)/2)."""
        out = {}
        for m, c in self._coeffs.items():
            k = blade_grade(m)
            out[m] = -c if (k * (k - 1) // 2) & 1 else c
        return MultiVector(self.n, out, _trusted=True)

    def grade_involution(self) -> "MultiVector":
        """Automorphism flipping each grade-k part by (-1)^k."""
        out = {}
        for m, c in self._coeffs.items():
            out[m] = -c if blade_grade(m) & 1 else c
        return MultiVector(self.n, out, _trusted=True)

    # -- metric ----------------------------------------------------------

    def inner(self, other: "MultiVector") -> Fraction:
        self._check(other)
        a, b = self._coeffs, other._coeffs
        if len(b) < len(a):
            a, b = b, a
        return sum((c * b[m] for m, c in a.items() if m in b), _ZERO)

    def norm_sq(self) -> Fraction:
        return sum((c * c for c in self._coeffs.values()), _ZERO)


# -- module-level operations ------------------------------------------------


def geometric_product(a: MultiVector, b: MultiVector) -> MultiVector:
    if a.n != b.n:
        raise DimensionMismatchError(f"Cl_{a.n} vs Cl_{b.n}")
    out: dict[int, Fraction] = {}
    for ma, ca in a._coeffs.items():
        for mb, cb in b._coeffs.items():
            mask, sign = blade_product(ma, mb)
            c = ca * cb
            s = out.get(mask, _ZERO) + (c if sign > 0 else -c)
            if s:
                out[mask] = s
            else:
                out.pop(mask, None)
    return MultiVector(a.n, out, _trusted=True)


def wedge(a: MultiVector, b: MultiVector) -> MultiVector:
    """Exterior product: blade pairs with shared indices drop out."""
    if a.n != b.n:
        raise DimensionMismatchError(f"Cl_{a.n} vs Cl_{b.n}")
    out: dict[int, Fraction] = {}
    for ma, ca in a._coeffs.items():
        for mb, cb in b._coeffs.items():
            if ma & mb:
                continue
            mask, sign = blade_product(ma, mb)
            c = ca * cb
            s = out.get(mask, _ZERO) + (c if sign > 0 else -c)
            if s:
                out[mask] = s
            else:
                out.pop(mask, None)
    return MultiVector(a.n, out, _trusted=True)


def wedge_power(a: MultiVector, k: int) -> MultiVector:
    out = MultiVector.scalar(a.n, 1)
    for _ in range(k):
        out = wedge(out, a)
    return out


def contract_vector(x: MultiVector, t: MultiVector) -> MultiVector:
    """Interior product of a vector into a multivector.

    Realized as (alpha(t)*x - x*t)/2, the unique bilinear extension that is
    grade-per-grade the usual interior product and drops each grade by one.
    """
    if x.n != t.n:
        raise DimensionMismatchError(f"Cl_{x.n} vs Cl_{t.n}")
    if x and x.grades() != (1,):
        raise GradeError("contraction direction must be pure grade 1")
    half = Fraction(1, 2)
    return (geometric_product(t.grade_involution(), x) - geometric_product(x, t)).scale(half)


def involutions(t: MultiVector) -> tuple[MultiVector, MultiVector]:
    """(reverse, grade involution) of a multivector."""
    return t.reverse(), t.grade_involution()


def inner_product(a: MultiVector, b: MultiVector) -> Fraction:
    """Scalar product in which all basis blades are orthonormal."""
    return a.inner(b)


def sandwich_sum(t: MultiVector) -> MultiVector:
    """Sum of e_i * t * e_i over the standard orthonormal frame.

    Acts on each grade-k part as multiplication by (-1)^k (2k - n).
    """
    n = t.n
    out = MultiVector.zero(n)
    for i in range(1, n + 1):
        e = MultiVector.basis_vector(n, i)
        out = out + geometric_product(geometric_product(e, t), e)
    return out


def volume_element(n: int) -> MultiVector:
    return MultiVector.blade(n, range(1, n + 1))


def star(t: MultiVector) -> MultiVector:
    """Hodge dual, per grade: *phi = (-1)^(k(k+1)/2) phi * nu."""
    nu = volume_element(t.n)
    out = MultiVector.zero(t.n)
    for k in t.grades():
        part = geometric_product(t.grade_project(k), nu)
        if (k * (k + 1) // 2) & 1:
            part = -part
        out = out + part
    return out


def selfdual_split(t: MultiVector) -> tuple[MultiVector, MultiVector]:
    """Components with nu*phi = +phi and nu*phi = -phi; needs n = 0 mod 4."""
    if t.n % 4 != 0:
        raise ValueError(f"self-dual splitting needs n = 0 mod 4, got n = {t.n}")
    nu = volume_element(t.n)
    half = Fraction(1, 2)
    nut = geometric_product(nu, t)
    return (t + nut).scale(half), (t - nut).scale(half)


def hodge_components(n: int) -> tuple[MultiVector, Callable, Callable | None]:
    """Volume element, Hodge star, and (n = 0 mod 4 only) the self-dual split."""
    if not 1 <= n <= MAX_DIM:
        raise ValueError(f"dimension {n} outside supported range 1..{MAX_DIM}")
    nu = volume_element(n)

    def star_n(t: MultiVector) -> MultiVector:
        if t.n != n:
            raise DimensionMismatchError(f"Cl_{t.n} vs Cl_{n}")
        return star(t)

    if n % 4 == 0:
        def split_n(t: MultiVector) -> tuple[MultiVector, MultiVector]:
            if t.n != n:
                raise DimensionMismatchError(f"Cl_{t.n} vs Cl_{n}")
            return selfdual_split(t)
        return nu, star_n, split_n
    return nu, star_n, None


def grade_profile(t: MultiVector) -> tuple[tuple[int, Fraction], ...]:
    """Per-grade squared norms; they sum to the full squared norm."""
    acc: dict[int, Fraction] = {}
    for m, c in t._coeffs.items():
        k = blade_grade(m)
        acc[k] = acc.get(k, _ZERO) + c * c
    return tuple(sorted(acc.items()))


# -- serialization ------------------------------------------------------------


def to_record(t: MultiVector) -> dict:
    terms = []
    for mask, c in t._coeffs.items():
        terms.append({"blade": list(indices_from_mask(mask)), "num": c.numerator, "den": c.denominator})
    terms.sort(key=lambda rec: rec["blade"])
    return {"n": t.n, "terms": terms}


def from_record(record: Mapping) -> MultiVector:
    n = record["n"]
    coeffs: dict[int, Fraction] = {}
    for term in record["terms"]:
        indices = term["blade"]
        if list(indices) != sorted(indices):
            raise ValueError(f"blade indices not ascending: {indices}")
        mask = mask_from_indices(indices, n)
        if mask in coeffs:
            raise ValueError(f"duplicate blade {indices}")
        c = Fraction(term["num"], term["den"])
        if c.numerator != term["num"] or c.denominator != term["den"]:
            raise ValueError(f"rational {term['num']}/{term['den']} not in lowest terms")
        if c:
            coeffs[mask] = c
    return MultiVector(n, coeffs)


def to_json(t: MultiVector) -> str:
    return json.dumps(to_record(t), separators=(", ", ": "))


def from_json(text: str) -> MultiVector:
    return from_record(json.loads(text))

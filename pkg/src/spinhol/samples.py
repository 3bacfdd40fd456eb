"""Seeded, reproducible generators for forms, spinors, and spectra.

Coefficients are small integers (default range [-3, 3]) so that exact
arithmetic stays cheap; unit vectors and unit spinors come from stereographic
parametrizations, which keep norms exactly 1 over the rationals.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .clifford import MultiVector, blade_grade, star, wedge
from .spinrep import SpinRep

COEFF_BOUND = 3


def _nonzero_int(rng: random.Random, bound: int) -> int:
    v = rng.randint(1, bound)
    return v if rng.random() < 0.5 else -v


def random_form(rng: random.Random, n: int, grades: Sequence[int], terms: int = 6,
                bound: int = COEFF_BOUND) -> MultiVector:
    """Sparse random multivector supported on the given grades."""
    population = [m for m in range(1 << n) if blade_grade(m) in set(grades)]
    count = min(terms, len(population))
    masks = rng.sample(population, count)
    coeffs = {m: Fraction(_nonzero_int(rng, bound)) for m in masks}
    return MultiVector(n, coeffs)


def random_pure_form(rng: random.Random, n: int, grade: int, terms: int = 6,
                     bound: int = COEFF_BOUND) -> MultiVector:
    while True:
        t = random_form(rng, n, [grade], terms=terms, bound=bound)
        if t:
            return t


def random_selfdual_four_form(rng: random.Random, terms: int = 8,
                              bound: int = COEFF_BOUND) -> MultiVector:
    """Random nonzero element of the self-dual 4-forms in Cl_8."""
    n = 8
    reps = [m for m in range(1 << n) if blade_grade(m) == 4 and (m & 1)]
    while True:
        chosen = rng.sample(reps, min(terms, len(reps)))
        t = MultiVector.zero(n)
        for m in chosen:
            b = MultiVector.from_mask(n, m, _nonzero_int(rng, bound))
            t = t + b + star(b)
        if t:
            return t


def random_two_form(rng: random.Random, n: int, terms: int = 5,
                    bound: int = COEFF_BOUND) -> MultiVector:
    return random_pure_form(rng, n, 2, terms=terms, bound=bound)


def random_unit_sphere_point(rng: random.Random, dim: int, bound: int = 2) -> tuple[Fraction, ...]:
    """Rational point on the unit sphere of R^dim (stereographic chart)."""
    while True:
        v = [Fraction(rng.randint(-bound, bound), rng.randint(1, 2)) for _ in range(dim - 1)]
        if any(v) or rng.random() < 0.2:
            break
    nsq = sum((c * c for c in v), Fraction(0))
    denom = 1 + nsq
    coords = [2 * c / denom for c in v] + [(1 - nsq) / denom]
    return tuple(coords)


def random_unit_vector(rng: random.Random, n: int) -> MultiVector:
    coords = random_unit_sphere_point(rng, n)
    return MultiVector(n, {1 << i: c for i, c in enumerate(coords) if c})


def random_unit_spinor(rng: random.Random, rep: SpinRep, chirality: int = 1) -> tuple[Fraction, ...]:
    """Rational unit spinor; for n = 8 restricted to a half-spinor space."""
    if rep.n == 8:
        point = random_unit_sphere_point(rng, 8)
        if chirality == 1:
            return tuple(point) + (Fraction(0),) * 8
        return (Fraction(0),) * 8 + tuple(point)
    return random_unit_sphere_point(rng, rep.dim_s)


def random_spinor(rng: random.Random, rep: SpinRep, bound: int = COEFF_BOUND,
                  chirality: int | None = None) -> tuple[Fraction, ...]:
    coords = [Fraction(rng.randint(-bound, bound)) for _ in range(rep.dim_s)]
    if rep.n == 8 and chirality == 1:
        coords[8:] = [Fraction(0)] * 8
    elif rep.n == 8 and chirality == -1:
        coords[:8] = [Fraction(0)] * 8
    if not any(coords):
        coords[0 if chirality != -1 else 8] = Fraction(1)
    return tuple(coords)


def random_spectrum_pairs(rng: random.Random, zero_dim: int, bound: int = 6,
                          ) -> tuple[tuple[Fraction, int], ...]:
    """Traceless eigenvalue data (value, multiplicity) with the given kernel."""
    total = 8 - zero_dim
    if total < 2:
        raise ValueError("need at least two nonzero eigenvalues to be traceless")
    while True:
        p = rng.randint(2, min(total, 5))
        cuts = sorted(rng.sample(range(1, total), p - 1))
        mults = [b - a for a, b in zip([0] + cuts, cuts + [total])]
        lams: list[Fraction] = []
        ok = True
        for _ in range(p - 1):
            for _ in range(40):
                cand = Fraction(_nonzero_int(rng, bound))
                if cand not in lams:
                    lams.append(cand)
                    break
            else:
                ok = False
                break
        if not ok:
            continue
        partial = sum(m * l for m, l in zip(mults[:-1], lams))
        last = Fraction(-partial, mults[-1])
        if last == 0 or last in lams:
            continue
        lams.append(last)
        return tuple(zip(lams, mults))


def screened_spectrum_pairs(rng: random.Random, bound: int = 6) -> tuple[tuple[Fraction, int], ...]:
    """Traceless full-rank spectra avoiding the degenerate closure families."""
    from .spectra import match_family

    while True:
        pairs = random_spectrum_pairs(rng, 0, bound=bound)
        if match_family(pairs) is None:
            return pairs

"""Pure-arithmetic spectrum combinatorics for self-dual 4-form eigenvalue data.

Everything here is a statement about finite lists of rational eigenvalues with
multiplicities; the bridge to actual forms is the power-norm sequence
16 |T^(2k+1)|^2 = sum_q m_q lambda_q^(2(2k+1)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence


@dataclass(frozen=True)
class SpectrumCandidate:
    """Nonzero eigenvalues with multiplicities, at most 8 in total."""

    pairs: tuple[tuple[Fraction, int], ...]

    def __post_init__(self):
        pairs = tuple((Fraction(v), int(m)) for v, m in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        values = [v for v, _ in pairs]
        if any(v == 0 for v in values):
            raise ValueError("candidate eigenvalues must be nonzero")
        if len(set(values)) != len(values):
            raise ValueError("candidate eigenvalues must be pairwise distinct")
        if any(m < 1 for _, m in pairs):
            raise ValueError("multiplicities must be positive")
        if sum(m for _, m in pairs) > 8:
            raise ValueError("total multiplicity exceeds 8")

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.pairs)

    def trace(self) -> Fraction:
        return sum((v * m for v, m in self.pairs), Fraction(0))


def power_norm_sequence(cand: SpectrumCandidate, k_max: int) -> list[Fraction]:
    """[16 |T^(2k+1)|^2 for k = 0..k_max] for a form with this spectrum."""
    out = []
    for k in range(k_max + 1):
        e = 2 * (2 * k + 1)
        out.append(sum((m * v**e for v, m in cand.pairs), Fraction(0)))
    return out


def comb0_condition(cand: SpectrumCandidate, i: int, k_max: int) -> bool:
    """Whether sum_q m_q lambda_q^(2(2k+1)) = 2 lambda_i^(2(2k+1)) up to k_max."""
    if not 0 <= i < len(cand.pairs):
        raise IndexError(f"eigenvalue index {i} out of range")
    li = cand.pairs[i][0]
    series = power_norm_sequence(cand, k_max)
    return all(series[k] == 2 * li ** (2 * (2 * k + 1)) for k in range(k_max + 1))


def combin_condition(cand: SpectrumCandidate, i: int, j: int, k_max: int) -> bool:
    """Exact check of the two-eigenvalue power identity for k = 0..k_max."""
    p = len(cand.pairs)
    if i == j or not (0 <= i < p and 0 <= j < p):
        raise IndexError(f"need distinct eigenvalue indices in range, got ({i}, {j})")
    li, lj = cand.pairs[i][0], cand.pairs[j][0]
    series = power_norm_sequence(cand, k_max)
    base = series[0] / 4 - (li**2 + lj**2) / 2
    for k in range(k_max + 1):
        e = 2 * (2 * k + 1)
        lhs = series[k] / 4 - (li**e + lj**e) / 2
        rhs = (li * lj) ** (2 * k) * base
        if lhs != rhs:
            return False
    return True


def match_family(pairs: Iterable[tuple[Fraction, int]]) -> str | None:
    """Label "i", "ii", or "iii" when the data matches one of the closed
    spectrum families (up to relabeling), else None."""
    items = [(Fraction(v), int(m)) for v, m in pairs]
    values = {v: m for v, m in items}
    mults = sorted(m for _, m in items)
    if len(items) == 2:
        (a, ma), (b, mb) = items
        if b == -a and ma == mb:
            return "i"
        return None
    if len(items) == 6 and mults == [1, 1, 1, 1, 2, 2]:
        doubles = [v for v, m in items if m == 2]
        simples = [v for v, m in items if m == 1]
        if sorted(doubles) != sorted([-d for d in doubles]):
            return None
        if sorted(simples) != sorted([-s for s in simples]):
            return None
        c = abs(doubles[0])
        pos = sorted(abs(s) for s in simples)
        if pos[0] == pos[1] and pos[2] == pos[3] and pos[0] != pos[2] and c * c == pos[0] * pos[2]:
            return "ii"
        return None
    if len(items) == 4 and mults == [1, 1, 2, 4]:
        lam = next(v for v, m in items if m == 2)
        quad = next(v for v, m in items if m == 4)
        ones = [v for v, m in items if m == 1]
        if sorted(ones) != sorted([-o for o in ones]):
            return None
        mu = abs(ones[0])
        if quad * quad == abs(lam) * mu:
            return "iii"
        return None
    return None


@dataclass(frozen=True)
class FamilyHit:
    candidate: SpectrumCandidate
    passing_pairs: tuple[tuple[int, int], ...]
    family: str | None
    trace_feasible: bool

    def to_record(self) -> dict:
        return {
            "eigenvalues": [[str(v), m] for v, m in self.candidate.pairs],
            "passing_pairs": [list(p) for p in self.passing_pairs],
            "family": self.family,
            "trace_feasible": self.trace_feasible,
        }


def family_search(bound: int = 4, k_max: int = 6) -> list[FamilyHit]:
    """Exhaustive scan of traceless integer spectra on [-bound, bound].

    Returns every candidate whose power identity holds for some index pair up
    to k_max, labeled by the family it matches (None marks a counterexample to
    the classification, which the suite asserts never happens).
    """
    values = [Fraction(v) for v in range(-bound, bound + 1) if v != 0]
    hits: list[FamilyHit] = []
    for size in range(2, min(len(values), 8) + 1):
        for subset in combinations(values, size):
            for mults in _compositions(8, size):
                cand_pairs = tuple(zip(subset, mults))
                if sum(v * m for v, m in cand_pairs) != 0:
                    continue
                cand = SpectrumCandidate(cand_pairs)
                passing = tuple(
                    (i, j)
                    for i in range(size)
                    for j in range(i + 1, size)
                    if combin_condition(cand, i, j, k_max)
                )
                if passing:
                    fam = match_family(cand_pairs)
                    hits.append(FamilyHit(cand, passing, fam, cand.trace() == 0))
    return hits


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest

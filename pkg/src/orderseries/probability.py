"""Multivariate negative hypergeometric law, in exact rationals.

Draw W times with repetition from N classes split into groups of sizes
n_1..n_k; the chance that group i is hit v_i times is
prod <<n_i, v_i>> / <<N, W>>.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .combinat import compositions, multiset
from .errors import CompositionError

ExactProbability = Fraction


@dataclass(frozen=True)
class NHGParams:
    sizes: tuple[int, ...]
    draws: int

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(self.sizes))
        if not self.sizes:
            raise ValueError("at least one group is required")
        if any(not isinstance(n, int) or n < 1 for n in self.sizes):
            raise ValueError(f"group sizes must be positive integers, got {self.sizes}")
        if not isinstance(self.draws, int) or self.draws < 0:
            raise ValueError(f"draws must be a non-negative integer, got {self.draws}")

    @property
    def total(self) -> int:
        return sum(self.sizes)

    @property
    def groups(self) -> int:
        return len(self.sizes)

    def outcomes(self) -> Iterator[tuple[int, ...]]:
        return compositions(self.draws, self.groups, 0)


def nhg_pmf(p: NHGParams, v: Sequence[int]) -> Fraction:
    v = tuple(v)
    if len(v) != p.groups:
        raise CompositionError(f"expected {p.groups} counts, got {len(v)}")
    if any(x < 0 for x in v):
        raise CompositionError(f"counts must be non-negative, got {v}")
    if sum(v) != p.draws:
        raise CompositionError(f"counts {v} sum to {sum(v)}, not W = {p.draws}")
    num = 1
    for n, x in zip(p.sizes, v):
        num *= multiset(n, x)
    return Fraction(num, multiset(p.total, p.draws))


def nhg_normalization(p: NHGParams) -> Fraction:
    return sum((nhg_pmf(p, v) for v in p.outcomes()), Fraction(0))


def nhg_expectation(p: NHGParams, j: int) -> Fraction:
    """Mean of v_j (1-based j) by the closed form n_j <<N+1, W-1>> / <<N, W>>."""
    if not 1 <= j <= p.groups:
        raise ValueError(f"group index must lie in 1..{p.groups}, got {j}")
    return Fraction(p.sizes[j - 1] * multiset(p.total + 1, p.draws - 1), multiset(p.total, p.draws))


def nhg_expectation_exhaustive(p: NHGParams, j: int) -> Fraction:
    """Mean of v_j summed over every outcome."""
    if not 1 <= j <= p.groups:
        raise ValueError(f"group index must lie in 1..{p.groups}, got {j}")
    return sum((v[j - 1] * nhg_pmf(p, v) for v in p.outcomes()), Fraction(0))


def format_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"

"""Integer helpers: total binomials, multiset coefficients, compositions.

Conventions (chosen so every sweep is total):

* ``binom(a, b) == 0`` when ``b < 0``, ``b > a`` or ``a < 0``.
* ``multiset(n, m) == binom(n + m - 1, m)`` with ``multiset(n, 0) == 1`` and
  ``multiset(n, m) == 0`` for ``n <= 0 < m``.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterator, Sequence


@lru_cache(maxsize=None)
def binom(a: int, b: int) -> int:
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


def multiset(n: int, m: int) -> int:
    if m < 0:
        return 0
    if m == 0:
        return 1
    if n <= 0:
        return 0
    return binom(n + m - 1, m)


def poly_binom(x: int, k: int) -> int:
    """x(x-1)...(x-k+1)/k! for any integer x; the polynomial C(x, k)."""
    if k < 0:
        return 0
    num = 1
    for j in range(k):
        num *= x - j
    return num // math.factorial(k)


def rising_binom(x: int, k: int) -> int:
    """x(x+1)...(x+k-1)/k!, i.e. C(x+k-1, k) as a polynomial in x."""
    if k < 0:
        return 0
    num = 1
    for j in range(k):
        num *= x + j
    return num // math.factorial(k)


def multinomial(counts: Sequence[int]) -> int:
    out = math.factorial(sum(counts))
    for c in counts:
        out //= math.factorial(c)
    return out


def compositions(total: int, parts: int, minimum: int | Sequence[int] = 0) -> Iterator[tuple[int, ...]]:
    """All tuples of ``parts`` integers summing to ``total`` with part i >= minimum[i]."""
    if isinstance(minimum, int):
        lows = [minimum] * parts
    else:
        lows = list(minimum)
        if len(lows) != parts:
            raise ValueError("one lower bound per part required")
    if parts == 0:
        if total == 0:
            yield ()
        return
    slack = total - sum(lows)
    if slack < 0:
        return
    for extra in _weak(slack, parts):
        yield tuple(lo + e for lo, e in zip(lows, extra))


def _weak(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _weak(total - first, parts - 1):
            yield (first,) + rest


def partitions(total: int, parts: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``total`` into exactly ``parts`` positive parts, non-increasing."""
    if largest is None:
        largest = total
    if parts == 0:
        if total == 0:
            yield ()
        return
    if total < parts:
        return
    for first in range(min(largest, total - parts + 1), 0, -1):
        if first * parts < total:
            break
        for rest in partitions(total - first, parts - 1, first):
            yield (first,) + rest


def stirling2(m: int, k: int) -> int:
    return _stirling2(m, k)


@lru_cache(maxsize=None)
def _stirling2(m: int, k: int) -> int:
    if m == 0 and k == 0:
        return 1
    if m <= 0 or k <= 0 or k > m:
        return 0
    return k * _stirling2(m - 1, k) + _stirling2(m - 1, k - 1)


def newton_interpolate(values: Sequence[int], x: int) -> int:
    """Evaluate at ``x`` the polynomial of degree < len(values) with P(j) = values[j].

    Uses forward differences, so the arithmetic stays in the integers.
    """
    diffs = list(values)
    out = 0
    for k in range(len(values)):
        out += diffs[0] * poly_binom(x, k)
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    return out

"""Brute-force counters of order-preserving maps into the chain <n>.

Two independent levels:

* ``IdealLattice`` counts maps as chains of order ideals
  ``0 = I_0 <= I_1 <= ... <= I_n = V``; the map sends x to the first j with
  x in I_j.  Strict maps are the chains whose steps are antichains.
* ``count_*_direct`` enumerates the maps one by one (small posets only).
"""

from __future__ import annotations

from functools import lru_cache

from .combinat import newton_interpolate
from .errors import SizeLimitError
from .poset import HasseDigraph, _bits

LATTICE_LIMIT = 25
DIRECT_LIMIT = 12


class IdealLattice:
    """Order ideals of a poset as bitmasks, with memoised count sequences."""

    def __init__(self, h: HasseDigraph):
        if h.n > LATTICE_LIMIT:
            raise SizeLimitError(f"ideal lattice limited to {LATTICE_LIMIT} vertices, got {h.n}")
        self.h = h
        self.full = (1 << h.n) - 1
        self.ideals = self._enumerate()
        self.index = {I: j for j, I in enumerate(self.ideals)}
        self._strict = [self._one_hot(0)]
        self._nonstrict = [self._one_hot(0)]

    def _enumerate(self) -> list[int]:
        # depth-first extension by elements whose lower covers are all present
        seen = {0}
        stack = [0]
        while stack:
            I = stack.pop()
            for v in _bits(self.addable(I)):
                J = I | (1 << v)
                if J not in seen:
                    seen.add(J)
                    stack.append(J)
        return sorted(seen, key=lambda m: (bin(m).count("1"), m))

    def addable(self, ideal: int) -> int:
        """Minimal elements of the complement, as a bitmask."""
        out = 0
        for v in _bits(self.full & ~ideal):
            if self.h.lower_covers[v] & ~ideal == 0:
                out |= 1 << v
        return out

    def is_antichain_step(self, smaller: int, larger: int) -> bool:
        diff = larger & ~smaller
        return all(self.h.below[v] & diff == 0 for v in _bits(diff))

    def _one_hot(self, ideal: int) -> list[int]:
        vec = [0] * len(self.ideals)
        vec[self.index[ideal]] = 1
        return vec

    def _strict_step(self, vec: list[int]) -> list[int]:
        # I -> I + A for every set A of minimal elements of the complement
        out = [0] * len(vec)
        for j, c in enumerate(vec):
            if not c:
                continue
            I = self.ideals[j]
            free = list(_bits(self.addable(I)))
            for sub in range(1 << len(free)):
                J = I
                for b, v in enumerate(free):
                    if sub >> b & 1:
                        J |= 1 << v
                out[self.index[J]] += c
        return out

    def _nonstrict_step(self, vec: list[int]) -> list[int]:
        # g(J) = sum of f(I) over ideals I contained in J: a zeta transform over
        # the ideals, adding one element at a time along a linear extension
        g = dict(zip(self.ideals, vec))
        for v in self.h.topological_order:
            bit = 1 << v
            for J in self.ideals:
                if J & bit and (J ^ bit) in g and self._is_ideal_without(J, v):
                    g[J] += g[J ^ bit]
        return [g[I] for I in self.ideals]

    def _is_ideal_without(self, J: int, v: int) -> bool:
        return self.h.above[v] & J == 0

    def strict_counts(self, N: int) -> list[int]:
        while len(self._strict) <= N:
            self._strict.append(self._strict_step(self._strict[-1]))
        top = self.index[self.full]
        return [self._strict[n][top] for n in range(N + 1)]

    def nonstrict_counts(self, N: int) -> list[int]:
        while len(self._nonstrict) <= N:
            self._nonstrict.append(self._nonstrict_step(self._nonstrict[-1]))
        top = self.index[self.full]
        return [self._nonstrict[n][top] for n in range(N + 1)]


@lru_cache(maxsize=4096)
def ideal_lattice(h: HasseDigraph) -> IdealLattice:
    return IdealLattice(h)


def count_strict(h: HasseDigraph, n: int) -> int:
    return ideal_lattice(h).strict_counts(n)[n]


def count_nonstrict(h: HasseDigraph, n: int) -> int:
    return ideal_lattice(h).nonstrict_counts(n)[n]


def _count_direct(h: HasseDigraph, n: int, strict: bool) -> int:
    if h.n > DIRECT_LIMIT:
        raise SizeLimitError(f"direct enumeration limited to {DIRECT_LIMIT} vertices, got {h.n}")
    order = h.topological_order
    preds = [list(_bits(h.lower_covers[v])) for v in range(h.n)]
    value = [0] * h.n
    gap = 1 if strict else 0

    def rec(pos):
        if pos == len(order):
            return 1
        v = order[pos]
        lo = max((value[u] + gap for u in preds[v]), default=1)
        total = 0
        for val in range(lo, n + 1):
            value[v] = val
            total += rec(pos + 1)
        return total

    return rec(0)


def count_strict_direct(h: HasseDigraph, n: int) -> int:
    return _count_direct(h, n, strict=True)


def count_nonstrict_direct(h: HasseDigraph, n: int) -> int:
    return _count_direct(h, n, strict=False)


def stanley_reciprocity_holds(h: HasseDigraph, n: int) -> bool:
    """Omega(n) == (-1)^|V| Omega+(-n), with Omega+ interpolated from |V|+1 counts."""
    values = ideal_lattice(h).nonstrict_counts(h.n)
    return count_strict(h, n) == (-1) ** h.n * newton_interpolate(values, -n)

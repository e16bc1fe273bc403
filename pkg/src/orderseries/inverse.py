"""Find every Wixarika poset whose strict order series is a given chain sum.

Candidates are two-coloured trees: green corollas (``Mu`` with arity >= 2,
never directly inside another corolla) and red handles (``Dee``), with points
as leaves.  They are represented by ordinary ``PosetExpr`` values.  A target
``sum a_j z[j]`` with lowest term ``a_i z[i]`` and highest ``a_k z[k]`` forces
``d = k - i`` handles and total corolla multiplicity ``m = i - 2d - 1``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .errors import InfeasibleError, SizeLimitError
from .hstar import chain_to_hstar
from .poset import (
    POINT,
    Dee,
    HasseDigraph,
    Mu,
    Point,
    canonical_form,
    compact,
    enumerate_sp,
    eval_strict,
    hasse,
)
from .series import ChainSeries

CandidateWord = object  # a PosetExpr built from Point, Mu and Dee only


@dataclass(frozen=True)
class TargetSignature:
    low_coeff: int
    low_index: int
    high_coeff: int
    high_index: int

    def as_tuple(self):
        return (self.low_coeff, self.low_index, self.high_coeff, self.high_index)


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    reason: str = ""
    low_index: int | None = None
    low_coeff: int | None = None
    high_index: int | None = None
    high_coeff: int | None = None
    handles: int | None = None
    mu_uses: int | None = None

    @property
    def signature(self) -> TargetSignature:
        return TargetSignature(self.low_coeff, self.low_index, self.high_coeff, self.high_index)


def feasibility(f: ChainSeries) -> FeasibilityReport:
    if not f:
        return FeasibilityReport(False, "the zero series has no representation")
    i, k = f.min_index, f.max_index
    base = dict(low_index=i, low_coeff=f[i], high_index=k, high_coeff=f[k])
    if not f.is_positive():
        return FeasibilityReport(False, "coefficients must be positive integers", **base)
    if i < 1:
        return FeasibilityReport(False, "z[0] term present (empty poset part)", **base)
    alt = sum((-1) ** ((k - u) & 1) * a for u, a in f.items())
    if alt != 1:
        return FeasibilityReport(False, f"alternating sum is {alt}, not 1", **base)
    d = k - i
    m = i - 2 * d - 1
    base.update(handles=d, mu_uses=m)
    if m < 0:
        return FeasibilityReport(False, f"forced mu count i-2d-1 = {m} is negative", **base)
    h = chain_to_hstar(f, k)
    if h[k] != 0:
        return FeasibilityReport(False, f"h*_{k} = {h[k]} is nonzero", **base)
    return FeasibilityReport(True, "", **base)


def signature_eval(w) -> tuple[TargetSignature, list[int]]:
    """Lowest and highest terms of w(z[1]) plus the lowest index entering each handle.

    Handles are visited in post-order, so the trace lists inner handles first.
    """
    trace: list[int] = []

    def rec(x):
        if isinstance(x, Point):
            return 1, 1, 1, 1
        if isinstance(x, Mu):
            a, i, b, k = 1, 0, 1, 0
            for c in x.children:
                ca, ci, cb, ck = rec(c)
                a, i, b, k = a * ca, i + ci, b * cb, k + ck
            return a, i, b, k
        if isinstance(x, Dee):
            a, i, b, k = rec(x.child)
            trace.append(i)
            return i * a, i + 2, (k + 1) * b, k + 3
        raise TypeError(f"not a candidate word: {x!r}")

    return TargetSignature(*rec(w)), trace


def passes_filter(w, target: TargetSignature) -> bool:
    """The pruning test: every handle's lowest input index must keep dividing a_i."""
    sig, trace = signature_eval(w)
    remaining = target.low_coeff
    for t in trace:
        if remaining % t:
            return False
        remaining //= t
    return sig == target


@lru_cache(maxsize=None)
def _units(d: int, m: int) -> tuple:
    """Trees with a point or handle at the root (allowed inputs of a corolla)."""
    if d == 0:
        return (POINT,) if m == 0 else ()
    return tuple(Dee(c) for c in _trees(d - 1, m))


@lru_cache(maxsize=None)
def _corollas(d: int, m: int) -> tuple:
    out = []
    for arity in range(2, m + 2):
        for kids in _sequences(arity, d, m - (arity - 1)):
            out.append(Mu(kids))
    return tuple(out)


@lru_cache(maxsize=None)
def _sequences(length: int, d: int, m: int) -> tuple:
    """Ordered tuples of ``length`` units whose handle and mu counts add up to (d, m)."""
    if length == 0:
        return ((),) if d == 0 and m == 0 else ()
    out = []
    for d0 in range(d + 1):
        for m0 in range(m + 1):
            heads = _units(d0, m0)
            if not heads:
                continue
            tails = _sequences(length - 1, d - d0, m - m0)
            out.extend((h,) + t for h in heads for t in tails)
    return tuple(out)


@lru_cache(maxsize=None)
def _trees(d: int, m: int) -> tuple:
    return _units(d, m) + _corollas(d, m)


def enumerate_candidates(d: int, m: int) -> Iterator:
    """All normalised two-coloured trees with d handles and corolla multiplicity m."""
    if d < 0 or m < 0:
        return iter(())
    return iter(sorted(_trees(d, m), key=str))


@dataclass(frozen=True)
class DoppelgangerClass:
    """All posets sharing one order series, one expression per isomorphism type."""

    series: ChainSeries
    expressions: tuple
    digraphs: tuple = field(repr=False)

    @property
    def hasse(self) -> HasseDigraph:
        return self.digraphs[0]

    def __str__(self):
        return " ".join(map(str, self.expressions))


def _check(args):
    w, target, f = args
    return passes_filter(w, target) and eval_strict(w) == f


def _group(f: ChainSeries, matches) -> list[DoppelgangerClass]:
    by_form: dict[str, object] = {}
    for e in sorted((compact(w) for w in matches), key=str):
        by_form.setdefault(canonical_form(hasse(e)), e)
    if not by_form:
        return []
    exprs = tuple(sorted(by_form.values(), key=str))
    return [DoppelgangerClass(f, exprs, tuple(hasse(e) for e in exprs))]


def solve(f: ChainSeries, jobs: int = 1, sp: bool = False, max_points: int = 9) -> list[DoppelgangerClass]:
    """Every poset X with eval_strict(X) == f, grouped up to isomorphism.

    Wixarika mode (default) is exhaustive over the forced (d, m).  With
    ``sp=True`` all series-parallel posets with max-index many points are
    searched instead, refusing targets above ``max_points``.
    """
    if sp:
        return _solve_sp(f, max_points)
    report = feasibility(f)
    if not report.feasible:
        raise InfeasibleError(report)
    target = report.signature
    candidates = list(enumerate_candidates(report.handles, report.mu_uses))
    if jobs > 1 and len(candidates) > 64:
        chunk = max(1, math.ceil(len(candidates) / (4 * jobs)))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            flags = list(pool.map(_check, [(w, target, f) for w in candidates], chunksize=chunk))
        matches = [w for w, ok in zip(candidates, flags) if ok]
    else:
        matches = [w for w in candidates if _check((w, target, f))]
    return _group(f, matches)


def _solve_sp(f: ChainSeries, max_points: int) -> list[DoppelgangerClass]:
    if not f or not f.is_positive() or f.min_index < 1:
        raise InfeasibleError(FeasibilityReport(False, "coefficients must be positive with no z[0] term"))
    k = f.max_index
    alt = sum((-1) ** ((k - u) & 1) * a for u, a in f.items())
    if alt != 1:
        raise InfeasibleError(FeasibilityReport(False, f"alternating sum is {alt}, not 1"))
    if k > max_points:
        raise SizeLimitError(f"SP search capped at {max_points} points, target needs {k}")
    return _group(f, [e for e in enumerate_sp(k) if eval_strict(e) == f])

"""Exhaustive big-integer verification of the binomial identities.

Every checker sweeps a finite parameter box in lexicographic order and
returns an ``IdentityReport``.  ``perturb`` is added to every right-hand
side; a nonzero value must always produce a counterexample, which is how the
harness tests its own sensitivity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .combinat import binom, compositions, multinomial, multiset, partitions, stirling2


@dataclass(frozen=True)
class Counterexample:
    params: tuple
    lhs: int
    rhs: int

    def __str__(self):
        ps = ",".join(f"{k}={v}" for k, v in self.params)
        return f"({ps}) lhs={self.lhs} rhs={self.rhs}"


@dataclass(frozen=True)
class IdentityReport:
    name: str
    ranges: tuple
    passed: bool
    checked: int
    failures: int = 0
    counterexample: Counterexample | None = None

    def line(self) -> str:
        rng = " ".join(f"{k}={v}" for k, v in self.ranges)
        if self.passed:
            return f"{self.name} PASS checked={self.checked} {rng}"
        return f"{self.name} FAIL failures={self.failures}/{self.checked} counterexample={self.counterexample} {rng}"


def _report(name, ranges, cases, perturb) -> IdentityReport:
    checked = failures = 0
    first = None
    for params, lhs, rhs in cases:
        rhs += perturb
        checked += 1
        if lhs != rhs:
            failures += 1
            if first is None:
                first = Counterexample(tuple(params), lhs, rhs)
    return IdentityReport(name, tuple(ranges.items()), failures == 0, checked, failures, first)


# ---------------------------------------------------------------------------
# composition sums


def composition_sum(weights: Sequence[Callable[[int], int]], total: int, lows: Sequence[int]) -> int:
    """sum over x_1+...+x_k = total, x_i >= lows[i], of prod w_i(x_i), by enumeration."""
    out = 0
    for xs in compositions(total, len(weights), lows):
        p = 1
        for w, x in zip(weights, xs):
            p *= w(x)
            if not p:
                break
        out += p
    return out


def composition_table(weights: Sequence[Callable[[int], int]], top: int, lows: Sequence[int]) -> list[int]:
    """The same sums for every total 0..top at once, one part at a time."""
    dp = [1] + [0] * top
    for w, lo in zip(weights, lows):
        vals = [w(x) if x >= lo else 0 for x in range(top + 1)]
        dp = [sum(dp[t - x] * vals[x] for x in range(lo, t + 1)) for t in range(top + 1)]
    return dp


def _alternating(k: int, table: list[int], top: int) -> int:
    """sum_j (-1)^j C(k-1, j) table[top - j]; out-of-range entries are 0."""
    return sum((-1) ** j * binom(k - 1, j) * (table[top - j] if 0 <= top - j < len(table) else 0) for j in range(k))


# ---------------------------------------------------------------------------
# structural identities


def _pc_term(p, q, a, c, n, r):
    return binom(p + n, a) * binom(a, n) * binom(q + r, c) * binom(c, r)


def _pc_sum(p, q, s, t):
    total = 0
    for a in range(s + 1):
        c = s - a
        for n in range(min(a, t) + 1):
            r = t - n
            if r <= c:
                total += _pc_term(p, q, a, c, n, r)
    return total


def check_structural_pc(p_max: int = 8, q_max: int = 8, perturb: int = 0) -> IdentityReport:
    """C(p+q+t, s) C(s, t) as the difference of two four-fold binomial sums."""

    def cases():
        for p in range(p_max + 1):
            for q in range(q_max + 1):
                for s in range(p + q + 1):
                    for t in range(s + 1):
                        lhs = binom(p + q + t, s) * binom(s, t)
                        rhs = _pc_sum(p, q, s, t) - (_pc_sum(p, q, s - 1, t - 1) if s and t else 0)
                        yield (("p", p), ("q", q), ("s", s), ("t", t)), lhs, rhs

    return _report("pc", {"p_max": p_max, "q_max": q_max}, cases(), perturb)


def check_partition_identity(k_max: int = 4, n_max: int = 8, m_extra: int = 6, perturb: int = 0) -> IdentityReport:
    """C(m, n) = sum_j (-1)^j C(k-1, j) sum_{m_1+..+m_k = m-j, m_i >= n_i} prod C(m_i, n_i)."""

    def cases():
        for k in range(1, k_max + 1):
            for n in range(n_max + 1):
                m_top = n + k - 1 + m_extra
                for parts in compositions(n, k, 0):
                    table = composition_table([_binom_fn(ni) for ni in parts], m_top, parts)
                    for m in range(n + k - 1, m_top + 1):
                        yield (("k", k), ("parts", parts), ("m", m)), binom(m, n), _alternating(k, table, m)

    return _report("partition", {"k_max": k_max, "n_max": n_max, "m_extra": m_extra}, cases(), perturb)


def check_multiset_partition_identity(k_max: int = 4, n_max: int = 8, v_extra: int = 6, perturb: int = 0) -> IdentityReport:
    """((v-k+1, n)) = sum_j (-1)^j C(k-1, j) sum_{v_1+..+v_k = v-j, v_i >= 1} prod ((v_i, n_i))."""

    def cases():
        for k in range(1, k_max + 1):
            for n in range(n_max + 1):
                v_top = n + k - 1 + v_extra
                for parts in compositions(n, k, 0):
                    table = composition_table([_multiset_fn(ni) for ni in parts], v_top, [1] * k)
                    for v in range(n + k - 1, v_top + 1):
                        yield (("k", k), ("parts", parts), ("v", v)), multiset(v - k + 1, n), _alternating(k, table, v)

    return _report("multiset-partition", {"k_max": k_max, "n_max": n_max, "v_extra": v_extra}, cases(), perturb)


def _binom_fn(lower):
    return lambda top: binom(top, lower)


def _multiset_fn(m):
    return lambda n: multiset(n, m)


def check_vandermonde(p_max: int = 4, m_max: int = 6, perturb: int = 0) -> IdentityReport:
    """C(m_1+..+m_p, n) = sum_{n_1+..+n_p = n} prod C(m_i, n_i)."""

    def cases():
        for p in range(1, p_max + 1):
            for ms in compositions_box(p, m_max):
                total = sum(ms)
                table = composition_table([_row_fn(mi) for mi in ms], total, [0] * p)
                for n in range(total + 1):
                    yield (("ms", ms), ("n", n)), binom(total, n), table[n]

    return _report("vandermonde", {"p_max": p_max, "m_max": m_max}, cases(), perturb)


def _row_fn(top):
    return lambda lower: binom(top, lower)


def compositions_box(p: int, hi: int) -> Iterable[tuple]:
    if p == 0:
        yield ()
        return
    for first in range(hi + 1):
        for rest in compositions_box(p - 1, hi):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# negative-integer Vandermonde and division-free formulas


def check_negative_vandermonde(k_max: int = 4, n_max: int = 8, v_max: int = 20, perturb: int = 0) -> IdentityReport:
    """((v-k+1, 2n-1)) = sum_{v_1+..+v_k = v, v_i >= 1} prod ((v_i, 2n_i-1)), n_i >= 1."""

    def cases():
        for k in range(1, k_max + 1):
            for n in range(k, n_max + 1):
                for parts in compositions(n, k, 1):
                    table = composition_table([_multiset_fn(2 * ni - 1) for ni in parts], v_max, [1] * k)
                    for v in range(k, v_max + 1):
                        yield (("k", k), ("parts", parts), ("v", v)), multiset(v - k + 1, 2 * n - 1), table[v]

    return _report("negative-vandermonde", {"k_max": k_max, "n_max": n_max, "v_max": v_max}, cases(), perturb)


def _identity(x):
    return x


def check_noprod(v_max: int = 20, perturb: int = 0) -> IdentityReport:
    """C(v+n-1, 2n-1) = sum_{v_1+..+v_n = v, v_i >= 1} prod v_i, for v >= n."""

    def cases():
        for n in range(1, v_max + 1):
            table = composition_table([_identity] * n, v_max, [1] * n)
            for v in range(n, v_max + 1):
                yield (("n", n), ("v", v)), binom(v + n - 1, 2 * n - 1), table[v]

    return _report("noprod", {"v_max": v_max}, cases(), perturb)


def check_division_free(m_max: int = 20, perturb: int = 0) -> IdentityReport:
    """Both division-free formulas.

    nodiv:  C(m, 2n-1) = sum_{v_1+..+v_n = m-n+1, v_i >= 1} prod v_i   (n <= (m+1)/2)
    nodiv2: C(m, n) = sum_j (-1)^j C(n-1, j) sum_{m_1+..+m_n = m-j, m_i >= 1} prod m_i   (m >= 2n-1)
    """

    def cases():
        tables = {n: composition_table([_identity] * n, m_max, [1] * n) for n in range(1, m_max + 1)}
        for m in range(1, m_max + 1):
            for n in range(1, (m + 1) // 2 + 1):
                yield (("form", "nodiv"), ("m", m), ("n", n)), binom(m, 2 * n - 1), tables[n][m - n + 1]
            for n in range(1, (m + 1) // 2 + 1):
                yield (("form", "nodiv2"), ("m", m), ("n", n)), binom(m, n), _alternating(n, tables[n], m)

    return _report("division-free", {"m_max": m_max}, cases(), perturb)


def check_multinomial_compression(v_max: int = 20, n_max: int = 20, perturb: int = 0) -> IdentityReport:
    """C(v+n-1, 2n-1) as a sum over partitions of v into n parts, weighted by multinomials.

    Each (v, n) is checked twice: against the binomial and against the
    uncompressed sum over compositions.
    """

    def cases():
        for n in range(1, n_max + 1):
            table = composition_table([_identity] * n, v_max, [1] * n)
            for v in range(n, v_max + 1):
                compressed = 0
                for part in partitions(v, n):
                    mult = [part.count(x) for x in sorted(set(part))]
                    prod = 1
                    for x in part:
                        prod *= x
                    compressed += multinomial(mult) * prod
                yield (("form", "binomial"), ("n", n), ("v", v)), binom(v + n - 1, 2 * n - 1), compressed
                yield (("form", "noprod"), ("n", n), ("v", v)), table[v], compressed

    return _report("multinomial", {"v_max": v_max, "n_max": n_max}, cases(), perturb)


# ---------------------------------------------------------------------------
# weak compositions and Stirling numbers


def ntilde(m: int, k: int) -> int:
    """Number of ways to write m = m_1+...+m_k with m_i >= 0, counted one by one."""
    if m < 0:
        return 0
    return sum(1 for _ in compositions(m, k, 0))


def stirling_expansion(m: int, k: int) -> int:
    """sum_{j=0}^{k-1} C(k, j) S(m, k-j) with S the Stirling numbers of the second kind."""
    return sum(binom(k, j) * stirling2(m, k - j) for j in range(k))


def check_stirling_partition(m_max: int = 10, k_max: int = 5, perturb: int = 0) -> IdentityReport:
    """ntilde(m, k) equals its Stirling expansion, and the alternating ntilde sum is 1."""

    def cases():
        for k in range(1, k_max + 1):
            for m in range(k - 1, m_max + 1):
                yield (("form", "stirling"), ("k", k), ("m", m)), ntilde(m, k), stirling_expansion(m, k)
                yield (("form", "alternating"), ("k", k), ("m", m)), 1, _ntilde_alternating(m, k)

    return _report("stirling", {"m_max": m_max, "k_max": k_max}, cases(), perturb)


def _ntilde_alternating(m, k):
    return sum((-1) ** j * binom(k - 1, j) * ntilde(m - j, k) for j in range(k))


def check_ntilde_alternating(m_max: int = 10, k_max: int = 5, perturb: int = 0) -> IdentityReport:
    """1 = sum_j (-1)^j C(k-1, j) ntilde(m-j, k) for m >= k-1 (the n = 0 case of the partition identity)."""

    def cases():
        for k in range(1, k_max + 1):
            for m in range(k - 1, m_max + 1):
                yield (("k", k), ("m", m)), 1, _ntilde_alternating(m, k)

    return _report("ntilde", {"m_max": m_max, "k_max": k_max}, cases(), perturb)


def check_composition_expansion(m_max: int = 10, k_max: int = 5, perturb: int = 0) -> IdentityReport:
    """ntilde(m, k) = sum_j C(k, j) comp(m, k-j), comp(m, r) = compositions of m into r positive parts.

    This is the expansion that does hold: choose the j empty slots, then fill
    the others with positive parts.
    """

    def cases():
        for k in range(1, k_max + 1):
            for m in range(k - 1, m_max + 1):
                rhs = sum(binom(k, j) * sum(1 for _ in compositions(m, k - j, 1)) for j in range(k + 1))
                yield (("k", k), ("m", m)), ntilde(m, k), rhs

    return _report("composition-expansion", {"m_max": m_max, "k_max": k_max}, cases(), perturb)


# ---------------------------------------------------------------------------
# closing identities


def check_tail_identities(v_max: int = 20, n_max: int = 6, k_max: int = 4, perturb: int = 0) -> IdentityReport:
    """The odd-part specialisation and its closed binomial form.

    With 2n-k = sum (2n_i - 1), n_i >= 1, and v >= 2n-1+k-1:

    sums:     ((v-k+1, 2n-k)) = sum_j (-1)^j C(k-1,j) sum_{v_1+..+v_k = v-j, v_i>=1} prod ((v_i, 2n_i-1))
    multiset: ((v-k+1, 2n-k)) = sum_j (-1)^j C(k-1,j) ((v-k+1-j, 2n-1))
    binomial: C(v-2k+2n, 2n-k) = sum_j (-1)^j C(k-1,j) C(v-k-1+2n-j, 2n-1)
    """

    def cases():
        for k in range(1, k_max + 1):
            for n in range(k, n_max + 1):
                lo = 2 * n - 1 + k - 1
                if lo > v_max:
                    continue
                for parts in compositions(n, k, 1):
                    table = composition_table([_multiset_fn(2 * ni - 1) for ni in parts], v_max, [1] * k)
                    for v in range(lo, v_max + 1):
                        yield (
                            (("form", "sums"), ("k", k), ("parts", parts), ("v", v)),
                            multiset(v - k + 1, 2 * n - k),
                            _alternating(k, table, v),
                        )
                for v in range(lo, v_max + 1):
                    rhs = sum((-1) ** j * binom(k - 1, j) * multiset(v - k + 1 - j, 2 * n - 1) for j in range(k))
                    yield (("form", "multiset"), ("k", k), ("n", n), ("v", v)), multiset(v - k + 1, 2 * n - k), rhs
                    rhs = sum((-1) ** j * binom(k - 1, j) * binom(v - k - 1 + 2 * n - j, 2 * n - 1) for j in range(k))
                    yield (("form", "binomial"), ("k", k), ("n", n), ("v", v)), binom(v - 2 * k + 2 * n, 2 * n - k), rhs

    return _report("tail", {"v_max": v_max, "n_max": n_max, "k_max": k_max}, cases(), perturb)


IDENTITIES: dict[str, Callable[..., IdentityReport]] = {
    "pc": check_structural_pc,
    "partition": check_partition_identity,
    "multiset-partition": check_multiset_partition_identity,
    "negative-vandermonde": check_negative_vandermonde,
    "noprod": check_noprod,
    "division-free": check_division_free,
    "multinomial": check_multinomial_compression,
    "stirling": check_stirling_partition,
    "ntilde": check_ntilde_alternating,
    "composition-expansion": check_composition_expansion,
    "tail": check_tail_identities,
    "vandermonde": check_vandermonde,
}

"""h*-vectors of order polytopes and the chain-basis coefficients.

With |X| = s the non-strict order series is ``x h*(x) / (1-x)^(s+1)`` and
``h*(x) = sum_i b_i (1-x)^(s-i)`` where ``b_i = (-1)^(s+i) a_i``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .combinat import binom
from .errors import InvalidSizeError, NotRepresentableError, SeriesSyntaxError
from .series import ChainSeries, NonStrictSeries, inverse_reciprocity


@dataclass(frozen=True)
class HStarVector:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("an h*-vector has at least one entry")

    @property
    def size(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, j):
        return self.coeffs[j]

    def __len__(self):
        return len(self.coeffs)

    def __str__(self):
        return "(" + ",".join(map(str, self.coeffs)) + ")"

    @classmethod
    def parse(cls, text: str) -> "HStarVector":
        body = text.strip()
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
        try:
            return cls(tuple(int(t) for t in body.split(",")))
        except ValueError as exc:
            raise SeriesSyntaxError(f"not an h*-vector: {text!r}") from exc


def chain_to_hstar(c: ChainSeries, size: int) -> HStarVector:
    """h*_j = sum_i (-1)^(size-i+j) c_i C(size-i, j)."""
    top = c.max_index
    if size < 0 or (top is not None and size < top):
        raise InvalidSizeError(f"size {size} is smaller than the top index {top}")
    h = [0] * (size + 1)
    for i, a in c.items():
        for j in range(size - i + 1):
            h[j] += (-1) ** ((size - i + j) & 1) * a * binom(size - i, j)
    return HStarVector(tuple(h))


def hstar_to_chain(h: HStarVector) -> ChainSeries:
    """Inverse of chain_to_hstar: c_i = sum_j h*_j C(j, size-i)."""
    s = h.size
    if s > 0 and h[s] != 0:
        raise NotRepresentableError(
            f"h*_{s} = {h[s]} is nonzero, so there is no chain-basis preimage without a z[0] term"
        )
    return ChainSeries({i: sum(hj * binom(j, s - i) for j, hj in enumerate(h.coeffs)) for i in range(s + 1)})


def ehrhart_expansion(h: HStarVector, N: int) -> list[int]:
    """Coefficients of x h*(x)/(1-x)^(size+1) up to x^N."""
    s = h.size
    return [0] + [sum(hj * binom(n - 1 - j + s, s) for j, hj in enumerate(h.coeffs)) for n in range(1, N + 1)]


def moebius_polynomial(f: ChainSeries | NonStrictSeries) -> list[int]:
    """Coefficients (ascending powers of y) after substituting y = 1/(1-x)."""
    out: dict[int, int] = {}
    if isinstance(f, ChainSeries):
        # z[n] = y (y-1)^n
        for n, a in f.items():
            for k in range(n + 1):
                deg = n - k + 1
                out[deg] = out.get(deg, 0) + a * binom(n, k) * (-1) ** k
    elif isinstance(f, NonStrictSeries):
        # w[n] = y^(n+1) - y^n
        for n, b in f.items():
            out[n + 1] = out.get(n + 1, 0) + b
            out[n] = out.get(n, 0) - b
    else:
        raise TypeError(f"cannot transform {type(f).__name__}")
    top = max((d for d, c in out.items() if c), default=0)
    return [out.get(d, 0) for d in range(top + 1)]


def chain_hstar_constraints(h: HStarVector) -> dict[int, int]:
    """sum_{i>=j} (-1)^j h*_i C(i, j) for 0 < j < size; all vanish for a chain."""
    return {
        j: (-1) ** (j & 1) * sum(h[i] * binom(i, j) for i in range(j, h.size + 1))
        for j in range(1, h.size)
    }


def nonstrict_from_hstar(h: HStarVector) -> NonStrictSeries:
    """Basis form of x h*(x)/(1-x)^(size+1): b_i = (-1)^(size-i) sum_j h*_j C(j, size-i)."""
    s = h.size
    return NonStrictSeries(
        {i: (-1) ** ((s - i) & 1) * sum(hj * binom(j, s - i) for j, hj in enumerate(h.coeffs)) for i in range(s + 1)},
        size=s,
    )


def hstar_from_nonstrict(f: NonStrictSeries) -> HStarVector:
    return chain_to_hstar(inverse_reciprocity(f), f.size)

"""Order series in the chain basis.

A strict order series is stored as a finite integer combination of
``z[i] = x^i / (1 - x)^(i + 1)``; a non-strict one as a combination of
``w[i] = x / (1 - x)^(i + 1)``.  All arithmetic is exact.

Textual form: ``2*z[4] + 3*z[5]`` (ascending index, terms joined by `` + ``,
coefficient always written, negative coefficients carry a leading ``-`` as
in ``1*z[1] + -1*z[3]``; the parser also accepts ``z[1] - z[3]``).
The zero series prints as ``0``.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping

from .combinat import binom, poly_binom, rising_binom
from .errors import InvalidSizeError, SeriesSyntaxError

__all__ = [
    "ChainSeries",
    "NonStrictSeries",
    "star",
    "hadamard",
    "dee",
    "reciprocity",
    "inverse_reciprocity",
    "star_plus",
    "dee_plus",
    "expand",
    "omega_eval",
    "omega_plus_eval",
    "zeta",
    "zeta_plus",
]


class _BasisSeries:
    """Sparse map index -> nonzero integer; immutable."""

    __slots__ = ("_coeffs",)
    letter = "?"

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for i, a in items:
            if not isinstance(i, int) or i < 0:
                raise ValueError(f"basis index must be a non-negative int, got {i!r}")
            if not isinstance(a, int):
                raise TypeError(f"coefficients must be ints, got {a!r}")
            acc[i] = acc.get(i, 0) + a
        self._coeffs = {i: acc[i] for i in sorted(acc) if acc[i]}

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(self._coeffs.items())

    def __getitem__(self, i: int) -> int:
        return self._coeffs.get(i, 0)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    @property
    def min_index(self) -> int | None:
        return next(iter(self._coeffs), None)

    @property
    def max_index(self) -> int | None:
        return next(reversed(self._coeffs), None) if self._coeffs else None

    def is_positive(self) -> bool:
        return all(a > 0 for a in self._coeffs.values())

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        return " + ".join(f"{a}*{self.letter}[{i}]" for i, a in self._coeffs.items())


_TERM = re.compile(r"\s*([+-])?\s*(-)?\s*(?:(\d+)\s*\*\s*)?([a-z])\s*\[\s*(\d+)\s*\]\s*")


def _parse_terms(text: str, letter: str) -> dict[int, int]:
    """Parse ``a*z[i] + b*z[j] ...`` (or the literal ``0``) into index -> coefficient."""
    if text.strip() == "0":
        return {}
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        here = len(text) - len(text[pos:].lstrip())
        if not m:
            raise SeriesSyntaxError(f"expected a term like 3*{letter}[i]", here)
        sign, inner, coef, found, idx = m.groups()
        if pos > 0 and sign is None:
            raise SeriesSyntaxError("expected '+' or '-' between terms", here)
        if pos == 0 and sign and inner:
            raise SeriesSyntaxError("doubled sign", here)
        if found != letter:
            raise SeriesSyntaxError(f"expected basis letter {letter!r}, got {found!r}", m.start(4))
        i = int(idx)
        negative = (sign == "-") != (inner == "-")
        coeffs[i] = coeffs.get(i, 0) + (-1 if negative else 1) * (int(coef) if coef else 1)
        pos = m.end()
    if pos == 0:
        raise SeriesSyntaxError("empty series", 0)
    return coeffs


class ChainSeries(_BasisSeries):
    """Strict order series: sum of a_i * x^i/(1-x)^(i+1)."""

    __slots__ = ()
    letter = "z"

    @classmethod
    def zeta(cls, i: int, coefficient: int = 1) -> "ChainSeries":
        return cls({i: coefficient})

    @classmethod
    def parse(cls, text: str) -> "ChainSeries":
        return cls(_parse_terms(text, "z"))

    def __eq__(self, other):
        if isinstance(other, ChainSeries):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("z", tuple(self._coeffs.items())))

    def __repr__(self):
        return f"ChainSeries('{self}')"

    def __add__(self, other):
        if not isinstance(other, ChainSeries):
            return NotImplemented
        return ChainSeries(list(self.items()) + list(other.items()))

    def __neg__(self):
        return ChainSeries({i: -a for i, a in self.items()})

    def __sub__(self, other):
        if not isinstance(other, ChainSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        # series * series is the concatenation product; int * series scales
        if isinstance(other, ChainSeries):
            return star(self, other)
        if isinstance(other, int):
            return ChainSeries({i: other * a for i, a in self.items()})
        return NotImplemented

    __rmul__ = __mul__


class NonStrictSeries(_BasisSeries):
    """Non-strict order series: sum of b_i * x/(1-x)^(i+1), tagged with |X|."""

    __slots__ = ("size",)
    letter = "w"

    def __init__(self, coeffs=(), size: int | None = None):
        super().__init__(coeffs)
        top = self.max_index
        if size is None:
            size = top if top is not None else 0
        if size < 0:
            raise InvalidSizeError(f"size must be non-negative, got {size}")
        self.size = size

    @classmethod
    def zeta(cls, i: int, coefficient: int = 1) -> "NonStrictSeries":
        return cls({i: coefficient}, size=i)

    @classmethod
    def parse(cls, text: str, size: int | None = None) -> "NonStrictSeries":
        return cls(_parse_terms(text, "w"), size=size)

    def __eq__(self, other):
        if isinstance(other, NonStrictSeries):
            return self._coeffs == other._coeffs and self.size == other.size
        return NotImplemented

    def __hash__(self):
        return hash(("w", self.size, tuple(self._coeffs.items())))

    def __repr__(self):
        return f"NonStrictSeries('{self}', size={self.size})"


def zeta(i: int) -> ChainSeries:
    return ChainSeries.zeta(i)


def zeta_plus(i: int) -> NonStrictSeries:
    return NonStrictSeries.zeta(i)


def star(f: ChainSeries, g: ChainSeries) -> ChainSeries:
    """Concatenation product f*(1-x)*g; on the basis z[n]*z[m] = z[n+m]."""
    out: dict[int, int] = {}
    for i, a in f.items():
        for j, b in g.items():
            out[i + j] = out.get(i + j, 0) + a * b
    return ChainSeries(out)


def _hadamard_basis(k: int, m: int) -> Iterator[tuple[int, int]]:
    for n in range(k + 1):
        c = binom(m + n, k) * binom(k, n)
        if c:
            yield m + n, c


def hadamard(f: ChainSeries, g: ChainSeries) -> ChainSeries:
    """Coefficient-wise product of the power series (disjoint union)."""
    out: dict[int, int] = {}
    for k, a in f.items():
        for m, b in g.items():
            lo, hi = (k, m) if k <= m else (m, k)
            for idx, c in _hadamard_basis(lo, hi):
                out[idx] = out.get(idx, 0) + a * b * c
    return ChainSeries(out)


def dee(f: ChainSeries) -> ChainSeries:
    """Attach a handle: z[n] -> n z[n+2] + (n+1) z[n+3]."""
    out: dict[int, int] = {}
    for n, a in f.items():
        out[n + 2] = out.get(n + 2, 0) + n * a
        out[n + 3] = out.get(n + 3, 0) + (n + 1) * a
    return ChainSeries(out)


def reciprocity(f: ChainSeries, size: int) -> NonStrictSeries:
    """The involution iota: b_i = (-1)^(size+i) a_i, with |X| = size."""
    top = f.max_index
    if size < 0 or (top is not None and size < top):
        raise InvalidSizeError(f"size {size} is smaller than the top index {top} of {f}")
    return NonStrictSeries({i: (-1) ** ((size + i) & 1) * a for i, a in f.items()}, size=size)


def inverse_reciprocity(f: NonStrictSeries) -> ChainSeries:
    top = f.max_index
    if top is not None and f.size < top:
        raise InvalidSizeError(f"size {f.size} is smaller than the top index {top} of {f}")
    return ChainSeries({i: (-1) ** ((f.size + i) & 1) * b for i, b in f.items()})


def star_plus(f: NonStrictSeries, g: NonStrictSeries) -> NonStrictSeries:
    """f * (1-x)/x * g; on the basis w[n] *+ w[m] = w[n+m]."""
    out: dict[int, int] = {}
    for i, a in f.items():
        for j, b in g.items():
            out[i + j] = out.get(i + j, 0) + a * b
    return NonStrictSeries(out, size=f.size + g.size)


def dee_plus(f: NonStrictSeries) -> NonStrictSeries:
    """Handle on the non-strict side: w[i] -> -i w[i+2] + (i+1) w[i+3].

    This is iota o dee o iota^-1 written out on the basis (the sign of
    iota cancels between the two applications, so |X| drops out).
    """
    out: dict[int, int] = {}
    for i, b in f.items():
        out[i + 2] = out.get(i + 2, 0) - i * b
        out[i + 3] = out.get(i + 3, 0) + (i + 1) * b
    return NonStrictSeries(out, size=f.size + 3)


def expand(f: ChainSeries | NonStrictSeries, N: int) -> list[int]:
    """Power-series coefficients of x^0..x^N."""
    if N < 0:
        raise ValueError("N must be non-negative")
    if isinstance(f, ChainSeries):
        return [sum(a * binom(m, i) for i, a in f.items()) for m in range(N + 1)]
    if isinstance(f, NonStrictSeries):
        return [0] + [sum(b * binom(m + i - 1, i) for i, b in f.items()) for m in range(1, N + 1)]
    raise TypeError(f"cannot expand {type(f).__name__}")


def omega_eval(f: ChainSeries, n: int) -> int:
    """Strict order polynomial sum a_i C(n, i), valid for every integer n."""
    return sum(a * poly_binom(n, i) for i, a in f.items())


def omega_plus_eval(f: NonStrictSeries, n: int) -> int:
    """Non-strict order polynomial sum b_i C(n+i-1, i), valid for every integer n."""
    return sum(b * rising_binom(n, i) for i, b in f.items())

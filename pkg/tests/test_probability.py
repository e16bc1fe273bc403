from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import truncated as T
from orderseries.combinat import compositions, multiset
from orderseries.errors import CompositionError
from orderseries.probability import (
    NHGParams,
    format_fraction,
    nhg_expectation,
    nhg_expectation_exhaustive,
    nhg_normalization,
    nhg_pmf,
)

params = st.builds(
    NHGParams,
    st.lists(st.integers(1, 4), min_size=1, max_size=4),
    st.integers(0, 8),
)


def test_examples():
    p = NHGParams((1, 1), 2)
    assert nhg_pmf(p, (1, 1)) == Fraction(1, 3)
    assert nhg_normalization(p) == 1
    assert nhg_expectation(p, 1) == 1
    assert nhg_pmf(NHGParams((3, 2), 0), (0, 0)) == 1
    assert nhg_pmf(NHGParams((4,), 5), (5,)) == 1
    assert nhg_normalization(NHGParams((2, 3, 1), 4)) == 1
    assert nhg_expectation(NHGParams((2, 3), 0), 1) == 0
    q = NHGParams((2, 3), 3)
    assert nhg_expectation(q, 2) == nhg_expectation_exhaustive(q, 2) == Fraction(9, 5)


def test_bad_inputs():
    p = NHGParams((1, 2), 3)
    with pytest.raises(CompositionError):
        nhg_pmf(p, (1, 1))
    with pytest.raises(CompositionError):
        nhg_pmf(p, (3,))
    with pytest.raises(CompositionError):
        nhg_pmf(p, (4, -1))
    with pytest.raises(ValueError):
        NHGParams((), 2)
    with pytest.raises(ValueError):
        NHGParams((0, 1), 2)
    with pytest.raises(ValueError):
        nhg_expectation(p, 3)


@given(params)
def test_distribution(p):
    assert nhg_normalization(p) == 1
    assert all(0 <= nhg_pmf(p, v) <= 1 for v in p.outcomes())
    means = [nhg_expectation(p, j) for j in range(1, p.groups + 1)]
    assert means == [nhg_expectation_exhaustive(p, j) for j in range(1, p.groups + 1)]
    assert sum(means) == p.draws


@given(params, st.data())
def test_generating_function_for_the_mean(p, data):
    # sum_v v_j prod <<n_i, v_i>> is the x^W coefficient of x d/dx applied to
    # the j-th factor of prod (1-x)^(-n_i)
    j = data.draw(st.integers(1, p.groups))
    W = p.draws
    factors = [T.power(T.geometric(W), n) for n in p.sizes]
    factors[j - 1] = T.shift(T.derivative(T.power(T.geometric(W + 1), p.sizes[j - 1]))[: W + 1], 1)
    prod = T.one(W)
    for f in factors:
        prod = T.mul(prod, f)
    assert prod[W] == p.sizes[j - 1] * multiset(p.total + 1, W - 1)
    direct = sum(v[j - 1] * _weight(p, v) for v in compositions(W, p.groups, 0))
    assert prod[W] == direct


def _weight(p, v):
    out = 1
    for n, x in zip(p.sizes, v):
        out *= multiset(n, x)
    return out


def test_format():
    assert format_fraction(Fraction(4, 2)) == "2/1"
    assert format_fraction(Fraction(-1, 3)) == "-1/3"

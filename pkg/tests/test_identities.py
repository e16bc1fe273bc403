import pytest
from hypothesis import given, strategies as st

from orderseries.combinat import binom, multinomial, multiset, partitions, stirling2
from orderseries.identities import (
    IDENTITIES,
    check_composition_expansion,
    check_multiset_partition_identity,
    check_ntilde_alternating,
    check_stirling_partition,
    composition_sum,
    composition_table,
    ntilde,
    stirling_expansion,
)

SMALL = {
    "pc": dict(p_max=3, q_max=3),
    "partition": dict(k_max=3, n_max=4, m_extra=3),
    "multiset-partition": dict(k_max=3, n_max=4, v_extra=3),
    "negative-vandermonde": dict(k_max=3, n_max=4, v_max=10),
    "noprod": dict(v_max=10),
    "division-free": dict(m_max=10),
    "multinomial": dict(v_max=10, n_max=10),
    "stirling": dict(m_max=5, k_max=3),
    "ntilde": dict(m_max=5, k_max=3),
    "composition-expansion": dict(m_max=5, k_max=3),
    "tail": dict(v_max=12, n_max=4, k_max=3),
    "vandermonde": dict(p_max=3, m_max=3),
}

HOLDING = [n for n in IDENTITIES if n not in ("stirling", "multiset-partition")]


def test_registry_covers_small_ranges():
    assert set(SMALL) == set(IDENTITIES)


@pytest.mark.parametrize("name", HOLDING)
def test_holds_on_default_range(name):
    report = IDENTITIES[name]()
    assert report.passed, report.line()
    assert report.checked > 0 and report.counterexample is None


@pytest.mark.parametrize("name", list(IDENTITIES))
@pytest.mark.parametrize("delta", [1, -1, 7])
def test_perturbation_is_detected(name, delta):
    report = IDENTITIES[name](perturb=delta, **SMALL[name])
    assert not report.passed
    assert report.failures >= 1 and report.counterexample is not None
    cx = report.counterexample
    assert cx.lhs != cx.rhs


@given(
    st.lists(st.integers(0, 4), min_size=1, max_size=4),
    st.integers(0, 14),
    st.sampled_from(["binom", "multiset", "identity"]),
)
def test_table_matches_enumeration(params, total, kind):
    weight = {
        "binom": lambda p: (lambda x: binom(x, p)),
        "multiset": lambda p: (lambda x: multiset(x, p)),
        "identity": lambda p: (lambda x: x + p),
    }[kind]
    fns = [weight(p) for p in params]
    lows = [p % 2 for p in params]
    assert composition_table(fns, total, lows)[total] == composition_sum(fns, total, lows)


class TestWorkedInstances:
    def test_pc_small(self):
        assert binom(1 + 1 + 0, 1) * binom(1, 0) == 2
        assert binom(6, 2) * binom(2, 2) == 15

    def test_noprod_instance(self):
        assert composition_sum([lambda x: x] * 2, 3, [1, 1]) == binom(4, 3) == 4

    def test_nodiv_instance(self):
        assert composition_sum([lambda x: x] * 2, 4, [1, 1]) == binom(5, 3) == 10

    def test_short_instance(self):
        total = 0
        for part in partitions(4, 2):
            mult = [part.count(x) for x in set(part)]
            total += multinomial(mult) * part[0] * part[1]
        assert total == 10

    def test_ntilde(self):
        assert [ntilde(m, 1) for m in range(6)] == [1] * 6
        assert ntilde(2, 2) == 3 == stirling_expansion(2, 2)
        assert ntilde(4, 3) == binom(6, 2)


class TestFindings:
    def test_stirling_expansion_fails(self):
        # weak compositions of 3 into 2 parts: (0,3),(1,2),(2,1),(3,0)
        assert ntilde(3, 2) == 4
        assert stirling_expansion(3, 2) == stirling2(3, 2) + 2 * stirling2(3, 1) == 5
        report = check_stirling_partition()
        assert not report.passed
        assert report.counterexample.params == (("form", "stirling"), ("k", 1), ("m", 0))

    def test_alternating_half_holds(self):
        assert check_ntilde_alternating().passed

    def test_composition_expansion_holds(self):
        assert check_composition_expansion(m_max=12, k_max=6).passed

    def test_multiset_partition_edge(self):
        report = check_multiset_partition_identity()
        assert not report.passed
        # only the n = 0, v = k - 1 corner breaks, once for each k
        assert report.failures == 4
        cx = report.counterexample
        assert dict(cx.params)["parts"] == (0,) and dict(cx.params)["v"] == 0
        assert (cx.lhs, cx.rhs) == (1, 0)


def test_report_line():
    report = IDENTITIES["noprod"](v_max=5)
    assert report.line() == f"noprod PASS checked={report.checked} v_max=5"
    bad = IDENTITIES["noprod"](v_max=5, perturb=1)
    assert bad.line().startswith("noprod FAIL failures=15/15 counterexample=(n=1,v=1) lhs=1 rhs=2")

import random

from hypothesis import HealthCheck, settings, strategies as st

from orderseries.series import ChainSeries, NonStrictSeries

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def chain_series(max_index=8, bound=100):
    return st.dictionaries(st.integers(0, max_index), st.integers(-bound, bound), max_size=5).map(ChainSeries)


@st.composite
def nonstrict_series(draw, max_index=8, bound=100):
    coeffs = draw(st.dictionaries(st.integers(0, max_index), st.integers(-bound, bound), max_size=5))
    top = max(coeffs, default=0)
    return NonStrictSeries(coeffs, size=draw(st.integers(top, top + 3)))


rngs = st.integers(0, 2**32 - 1).map(random.Random)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance")
    for n in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[n])

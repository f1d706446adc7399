from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from scenario_sched.core import Instance, Job

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much]
)
settings.register_profile("thorough", max_examples=600, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


weights = st.builds(Fraction, st.integers(0, 12), st.integers(1, 6))
pos_weights = st.builds(Fraction, st.integers(1, 12), st.integers(1, 6))


@st.composite
def instances(draw, m=None, K=None, max_n=7, weight=pos_weights, unit=False):
    m = draw(st.integers(1, 3)) if m is None else m
    K = draw(st.integers(1, 3)) if K is None else K
    n = draw(st.integers(0, max_n))
    jobs = []
    for _ in range(n):
        p = Fraction(1) if unit else draw(weight)
        s = draw(st.frozensets(st.integers(1, K), min_size=1))
        jobs.append(Job(p, s))
    return Instance(m, K, tuple(jobs))


@pytest.fixture
def small_instance():
    return Instance(2, 2, ((1, {1}), (2, {1, 2}), (Fraction(1, 2), {2})))

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from scenario_sched.adversaries import LB53Adversary, X53, build_I1, rule1_counterexample
from scenario_sched.algorithms import get_algorithm
from scenario_sched.core import Instance, InvalidAssignment, load_matrix, makespan
from scenario_sched.harness import duel
from scenario_sched.oracle import (
    OracleRefused,
    brute_force_opt,
    exact_opt,
    lower_bound_avg,
    verify_certificate,
)
from scenario_sched.transforms import delete_job

from .conftest import instances, weights


def test_known_optima():
    assert exact_opt(build_I1(2)).value == 1
    assert exact_opt(rule1_counterexample()).value == 3


def test_irrational_optimum():
    res = duel(get_algorithm("greedy"), LB53Adversary())
    assert res.instance.n == 8
    opt = exact_opt(res.instance)
    assert opt.value == 2 + 3 * X53 / 2
    assert makespan(load_matrix(res.instance, opt.witness)) == opt.value


def test_cap():
    big = Instance(2, 1, ((1, {1}),) * 17)
    with pytest.raises(OracleRefused):
        exact_opt(big)
    assert exact_opt(big, cap=17).value == 9


def test_certificates():
    inst = Instance(1, 1, ((1, {1}), (1, {1})))
    assert not verify_certificate(inst, (1, 1), 1)
    assert verify_certificate(inst, (1, 1), 2)
    with pytest.raises(InvalidAssignment):
        verify_certificate(inst, (1,), 2)


def test_lower_bound_examples():
    assert lower_bound_avg(Instance(2, 1, ((1, {1}),) * 4)) == 2
    assert lower_bound_avg(Instance(3, 1, ((7, {1}),))) == 7


@given(instances(max_n=7))
def test_matches_unpruned_enumeration(inst):
    a, b = exact_opt(inst), brute_force_opt(inst)
    assert a.value == b.value
    assert makespan(load_matrix(inst, a.witness)) == a.value
    assert a.value >= lower_bound_avg(inst) or not any(j.scenarios for j in inst.jobs)


@given(instances(max_n=7, weight=weights))
def test_zero_weights_and_empty_sets(inst):
    assert exact_opt(inst).value == brute_force_opt(inst).value


@given(instances(max_n=7), st.randoms(use_true_random=False))
def test_symmetries(inst, rnd):
    v = exact_opt(inst).value
    pi = list(range(1, inst.K + 1))
    rnd.shuffle(pi)
    permuted = Instance(inst.m, inst.K, tuple((j.p, {pi[k - 1] for k in j.scenarios}) for j in inst.jobs))
    assert exact_opt(permuted).value == v
    # the witness stays optimal under machine relabeling
    sigma = list(range(1, inst.m + 1))
    rnd.shuffle(sigma)
    w = [sigma[i - 1] for i in exact_opt(inst).witness]
    assert makespan(load_matrix(inst, w)) == v


@given(instances(max_n=7), st.integers(1, 7))
def test_deletion_never_raises_opt(inst, j):
    if inst.n == 0:
        return
    j = (j - 1) % inst.n + 1
    assert exact_opt(delete_job(inst, j)).value <= exact_opt(inst).value


def test_lower_bound_sweep():
    rng = random.Random(0)
    for _ in range(10_000):
        m, K = rng.randint(1, 3), rng.randint(1, 3)
        jobs = [(Fraction(rng.randint(1, 9), rng.randint(1, 3)), {rng.randint(1, K)}) for _ in range(rng.randint(1, 6))]
        inst = Instance(m, K, tuple(jobs))
        assert exact_opt(inst).value >= lower_bound_avg(inst)

import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from scenario_sched.core import (
    AssignmentState,
    Instance,
    InvalidAssignment,
    InvalidInstance,
    Job,
    LoadMatrix,
    Weight,
    anticipation,
    anticipation_of_loads,
    completion_time,
    exact,
    load_matrix,
    makespan,
    num_decimal,
    num_to_json,
    proxy_ratio,
    ratio,
)

from .conftest import instances

rationals = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 9))
weights_q17 = st.builds(Weight, rationals, rationals)

I1 = Instance(2, 2, ((1, {1}), (1, {2}), (1, {1, 2})))


# --- Weight --------------------------------------------------------------------------

def test_sqrt17_squares_to_17():
    r = Weight.sqrt17()
    assert r * r == 17
    assert 4 < r < 5


def test_sign_without_floats():
    # 33 - 8*sqrt(17) is about 0.0154, positive but tiny
    assert Weight(33, -8) > 0
    assert Weight(-33, 8) < 0
    assert Weight(0, 0) == 0


def test_rational_weight_hashes_like_fraction():
    assert Weight(Fraction(3, 2)) == Fraction(3, 2)
    assert hash(Weight(Fraction(3, 2))) == hash(Fraction(3, 2))
    assert {Weight(2): "x"}[2] == "x"


def test_target_value():
    X = Weight(3, 1)
    assert (3 + 5 * X / 2) / (2 + 3 * X / 2) == Weight(Fraction(9, 8), Fraction(1, 8))


@given(weights_q17, weights_q17, weights_q17)
def test_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if b != 0:
        assert (a / b) * b == a


@given(weights_q17, weights_q17)
def test_order_agrees_with_high_precision(a, b):
    assert (a < b) == ((a - b).sign() < 0)
    if a != b:
        from decimal import Decimal
        da, db = Decimal(a.decimal(40)), Decimal(b.decimal(40))
        assert (a < b) == (da < db)


@given(weights_q17)
def test_conjugate_norm_is_rational(a):
    assert (a * a.conjugate()).is_rational()


def test_exact_refuses_float():
    with pytest.raises(TypeError):
        exact(0.5)
    assert exact("3/4") == Fraction(3, 4)
    assert exact({"a": "1", "b": "2"}) == Weight(1, 2)


def test_json_number_roundtrip():
    for x in (Fraction(7, 3), Weight(1, Fraction(-1, 2))):
        assert exact(num_to_json(x)) == x
    assert num_decimal(Fraction(1, 3), 5).startswith("0.3333")


def test_ratio_conventions():
    assert ratio(0, 0) == 1
    assert ratio(3, 0) == math.inf
    assert ratio(Fraction(5), Fraction(3)) == Fraction(5, 3)


# --- instances and loads ----------------------------------------------------------------

def test_instance_validation():
    with pytest.raises(InvalidInstance):
        Instance(0, 1, ())
    with pytest.raises(InvalidInstance):
        Instance(2, 2, ((1, {3}),))
    with pytest.raises(InvalidInstance):
        Instance(2, 1, ((-1, {1}),))
    # empty scenario sets are allowed
    assert Instance(2, 1, ((1, set()),)).n == 1


def test_scenarios_recoverable():
    assert I1.scenario(1) == {1, 3}
    assert I1.scenario(2) == {2, 3}


@given(instances())
def test_instance_json_roundtrip(inst):
    assert Instance.from_json(json.loads(inst.dumps())) == inst


def test_load_matrix_examples():
    L = load_matrix(I1, (1, 2, 1))
    assert L[1, 1] == 2 and makespan(L) == 2
    assert makespan(load_matrix(I1, (1, 1, 2))) == 1
    z = load_matrix(I1, ())
    assert z == LoadMatrix.zeros(2, 2) and makespan(z) == 0
    one = Instance(2, 2, ((5, {1}),))
    assert load_matrix(one, (1,)).rows == ((5, 0), (0, 0))


def test_bad_assignment():
    with pytest.raises(InvalidAssignment):
        load_matrix(I1, (1, 3))
    with pytest.raises(InvalidAssignment):
        load_matrix(I1, (1, 1, 1, 1))


def test_completion_examples():
    assert completion_time(I1, (1, 2, 1), 3) == 2
    assert completion_time(Instance(2, 2, ((5, {1}),)), (1,), 1) == 5
    assert completion_time(Instance(2, 2, ((5, set()),)), (1,), 1) == 0


@given(instances(), st.randoms(use_true_random=False))
def test_incremental_state_matches_recomputation(inst, rnd):
    tau = [rnd.randint(1, inst.m) for _ in range(inst.n)]
    st_ = AssignmentState(inst.m, inst.K)
    prev = Fraction(0)
    for t, (job, i) in enumerate(zip(inst.jobs, tau), 1):
        st_.push(job.p, job.scenarios, i)
        assert st_.load_matrix() == load_matrix(inst, tau[:t])
        assert st_.completion[-1] == completion_time(inst, tau, t)
        assert st_.ms >= prev
        prev = st_.ms
    assert st_.ms == makespan(load_matrix(inst, tau))
    assert all(x >= 0 for r in st_.loads for x in r)


def test_add_scenario_counts_old_members():
    st_ = AssignmentState(2, 0)
    st_.push(Fraction(1), frozenset(), 1)
    st_.push(Fraction(1), frozenset(), 1)
    k = st_.add_scenario([1, 2])
    assert k == 1 and st_.loads[0][0] == 2 and st_.ms == 2


# --- proxy ratio and anticipation ----------------------------------------------------------

def test_proxy_examples():
    two = Instance(2, 2, ((1, {1}), (1, {1})))
    assert proxy_ratio(two, (1, 1)) == 2
    assert proxy_ratio(Instance(2, 2, ((1, {1}),)), (1,)) == 1


def test_proxy_needs_two_machines():
    with pytest.raises(ValueError):
        proxy_ratio(Instance(3, 1, ((1, {1}),)), (1,))


def test_anticipation_examples():
    assert anticipation(Instance(2, 2, ()), ()) == 1
    assert anticipation_of_loads([[4, 2], [1, 3]]) == 2
    # after relabeling, p(J2 ∩ S2) <= p(J2 ∩ S1)
    assert anticipation_of_loads([[4, 1], [3, 2]]) == 0


@given(instances(m=2, K=2), st.randoms(use_true_random=False))
def test_anticipation_invariant_under_relabeling(inst, rnd):
    tau = [rnd.randint(1, 2) for _ in range(inst.n)]
    L = [list(r) for r in load_matrix(inst, tau).rows]
    swapped_m = [L[1], L[0]]
    swapped_k = [[r[1], r[0]] for r in L]
    top = max(max(r) for r in L)
    cells = [(i, k) for i in range(2) for k in range(2) if L[i][k] == top]
    if len(cells) == 1:
        a = anticipation_of_loads(L)
        assert anticipation_of_loads(swapped_m) == a
        assert anticipation_of_loads(swapped_k) == a


@given(instances(m=2, K=2), st.randoms(use_true_random=False))
def test_proxy_bounds_true_ratio(inst, rnd):
    from scenario_sched.oracle import exact_opt

    if not any(j.p > 0 for j in inst.jobs):
        return
    tau = [rnd.randint(1, 2) for _ in range(inst.n)]
    ms = makespan(load_matrix(inst, tau))
    assert proxy_ratio(inst, tau) >= ratio(ms, exact_opt(inst).value)

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from scenario_sched.adversaries import (
    DESK_NODE_CAP,
    TARGET_53,
    CompositeAdversary,
    GeneralI,
    GeneralL,
    JobReveal,
    LB53Adversary,
    NodeReveal,
    OMHC3Adversary,
    RecursionSizes,
    build_I1,
    build_I2,
    get_adversary,
    n_bound,
    omhc_general_I,
    omhc_general_L,
    omhc_general_N,
    tower_at_least,
    x_size,
    xsize_bound,
    y_size,
)
from scenario_sched.algorithms import OnlineAlgorithm, get_algorithm
from scenario_sched.harness import duel, minimax_certify
from scenario_sched.hypergraph import is_hyperforest
from scenario_sched.oracle import exact_opt

BASELINES = ("greedy", "first-fit", "balanced-first-fit", "rule1")


class TripleAvoider(OnlineAlgorithm):
    """Random color among those that keep every edge below three same-colored nodes."""

    name = "triple-avoider"

    def __init__(self, seed):
        self.rng = random.Random(seed)

    def assign(self, state, p, scenarios):
        ok = [i for i in range(1, state.m + 1) if all(state.loads[i - 1][k - 1] + p < 3 for k in scenarios)]
        return self.rng.choice(ok or list(range(1, state.m + 1)))


# --- protocol --------------------------------------------------------------------------

def test_answers_must_match():
    adv = LB53Adversary()
    first = adv.next([])
    assert isinstance(first, JobReveal) and first.p == 1
    with pytest.raises(ValueError):
        adv.next([1, 2])
    adv.next([1])
    with pytest.raises(ValueError):
        adv.next([2, 1])


def test_answer_range_checked():
    adv = CompositeAdversary(2)
    adv.next([])
    with pytest.raises(ValueError):
        adv.next([3])


def test_reveal_json():
    assert JobReveal(Fraction(1, 2), frozenset({2, 1})).to_json()["scenarios"] == [1, 2]
    js = NodeReveal((1,), (frozenset({2}),)).to_json()
    assert js["joins"] == [1] and js["creates"] == [[2]]


def test_static_instances():
    I1, I2 = build_I1(3), build_I2(3)
    assert I1.n == 4 and I1.scenario(1) == {1, 3, 4} and I1.scenario(2) == {2, 3, 4}
    assert I2.scenario(3) == {3, 4, 5}
    assert exact_opt(I1).value == 1 and exact_opt(I2).value == 1


# --- job games --------------------------------------------------------------------------

@pytest.mark.parametrize("m", [2, 3, 4])
@pytest.mark.parametrize("alg", BASELINES[:3] + ("fixed:2",))
def test_composite_forces_two(m, alg):
    res = duel(get_algorithm(alg), CompositeAdversary(m))
    assert res.ratio >= 2 and res.audit_ok


@pytest.mark.parametrize("alg", BASELINES + ("alg53",))
def test_lb53_duels(alg):
    res = duel(get_algorithm(alg), LB53Adversary())
    assert res.ratio >= TARGET_53
    if alg == "alg53":
        assert res.ratio <= Fraction(5, 3)


@given(st.integers(0, 10 ** 6))
def test_lb53_against_seeded_players(seed):
    assert duel(get_algorithm(f"fixed:{seed}"), LB53Adversary()).ratio >= TARGET_53


def test_lb53_minimax():
    assert minimax_certify(LB53Adversary, 2, TARGET_53)


# --- the m = 3 hypergraph game ----------------------------------------------------------------

def _check_omhc3(res):
    assert res.success and res.ratio == 3
    assert res.audit_ok, res.audits
    assert res.instance.n <= 103
    assert sum(1 for k in range(1, res.instance.K + 1) if len(res.instance.scenario(k)) >= 2) <= 233


@pytest.mark.parametrize("alg", ("greedy", "first-fit", "balanced-first-fit"))
def test_omhc3_baselines(alg):
    _check_omhc3(duel(get_algorithm(alg), OMHC3Adversary()))


@settings(max_examples=40)
@given(st.integers(0, 10 ** 9))
def test_omhc3_seeded(seed):
    _check_omhc3(duel(get_algorithm(f"fixed:{seed}"), OMHC3Adversary()))


@settings(max_examples=40)
@given(st.integers(0, 10 ** 9))
def test_omhc3_triple_avoider(seed):
    _check_omhc3(duel(TripleAvoider(seed), OMHC3Adversary()))


def test_omhc3_budget_failure_is_reported():
    res = duel(get_algorithm("greedy"), OMHC3Adversary(node_cap=10))
    assert not res.success and "budget" in res.note


def test_fixed_count_games_refused():
    from scenario_sched.algorithms import ConfigurationError

    with pytest.raises(ConfigurationError):
        duel(get_algorithm("alg53"), OMHC3Adversary())


# --- general constructions ---------------------------------------------------------------

def test_recursion_values():
    assert (x_size(2, 2), x_size(2, 3), x_size(3, 2), x_size(3, 3)) == (3, 7, 10, 157)
    assert y_size(2, 2) == 35 and n_bound(2) == 4
    r = RecursionSizes(3, 3)
    assert (r.X, r.N) == (157, y_size(3, 2) + 1)
    with pytest.raises(ValueError):
        n_bound(1)


def test_xsize_bound():
    for m in range(1, 7):
        for d in range(1, 7):
            assert x_size(m, d) <= xsize_bound(m, d)


def test_tower():
    assert tower_at_least(2, 3, 16) and not tower_at_least(2, 3, 17)
    assert tower_at_least(2, 5, 10 ** 100)


def test_standalone_needs_d_at_most_m():
    with pytest.raises(ValueError):
        GeneralI(2, 3)
    with pytest.raises(ValueError):
        GeneralL(2, 0)


GENERAL = [("I", 2, 2), ("I", 3, 2), ("I", 3, 3), ("I", 4, 2), ("L", 2, 1), ("L", 2, 2)]


@pytest.mark.parametrize("kind,m,d", GENERAL)
@pytest.mark.parametrize("alg", ("greedy", "first-fit", "balanced-first-fit", "fixed:0", "fixed:9"))
def test_general_succeeds(kind, m, d, alg):
    adv = omhc_general_I(m, d) if kind == "I" else omhc_general_L(m, d)
    res = duel(get_algorithm(alg), adv)
    assert res.success and res.audit_ok, res.audits
    assert res.instance.n <= adv.node_cap
    assert is_hyperforest(adv.H)
    tag, payload = adv.result
    if tag == "all":
        # one node (or edge) per online color
        assert sorted(payload) == list(range(1, m + 1))
    else:
        edge = adv.H.edges[payload - 1]
        assert len(edge) == d and len({adv.phi[v] for v in edge}) == 1


@settings(max_examples=25)
@given(st.integers(0, 10 ** 9))
def test_N2_seeded(seed):
    res = duel(get_algorithm(f"fixed:{seed}"), omhc_general_N(2))
    assert res.success and res.ratio == 2 and res.instance.n <= 4 and res.audit_ok


def test_N2_minimax():
    assert minimax_certify(lambda: omhc_general_N(2), 2, 2)


def test_large_games_hit_budget():
    res = duel(get_algorithm("greedy"), get_adversary("general-N:3", 200))
    assert not res.success and res.audit_ok


def test_registry():
    assert get_adversary("composite:3").m == 3
    assert get_adversary("general-L:3,2").node_cap == DESK_NODE_CAP
    assert get_adversary("general-I:3,3").node_cap == 157
    with pytest.raises(KeyError):
        get_adversary("nope")

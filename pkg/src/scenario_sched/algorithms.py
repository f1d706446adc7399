"""Online algorithms for scheduling under scenarios.

Every algorithm maps (schedule so far, revealed job) to a machine id in 1..m and is a
pure function of the transcript: stateful ones rebuild their state by replay when the
history they see does not match what they cached.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction

from .core import AssignmentState, anticipation_of_loads, makespan_cell

FIVE_THIRDS = Fraction(5, 3)


class ConfigurationError(ValueError):
    pass


class UnsupportedInstance(ValueError):
    pass


class OnlineAlgorithm:
    name = "abstract"
    # False when the rule is tied to a fixed scenario count and cannot face games in
    # which scenarios keep appearing (hyperedge games)
    growing_scenarios = True

    def assign(self, state: AssignmentState, p, scenarios) -> int:
        raise NotImplementedError

    def check(self, m: int, K: int) -> None:
        """Raise ConfigurationError when the algorithm is undefined for (m, K)."""

    def __repr__(self):
        return f"<{self.name}>"


def _max_after(row, p, scenarios):
    best = 0
    for k in scenarios:
        v = row[k - 1] + p
        if v > best:
            best = v
    return best


# --- list scheduling under scenarios -------------------------------------------------

def favorable_machine(loads, s: int, active) -> int:
    """Lowest machine i such that, in every active scenario k, at least s other
    machines carry load >= loads[i][k]."""
    rows = loads.rows if hasattr(loads, "rows") else loads
    m = len(rows)
    for i in range(m):
        ok = True
        for k in active:
            x = rows[i][k - 1]
            if sum(1 for i2 in range(m) if i2 != i and rows[i2][k - 1] >= x) < s:
                ok = False
                break
        if ok:
            return i + 1
    raise AssertionError("no favorable machine: the pigeonhole argument was violated")


class Graham(OnlineAlgorithm):
    """Generalized list scheduling: send each job to an s-favorable machine, s = ceil(m/K) - 1."""

    name = "graham"
    growing_scenarios = False

    def check(self, m, K):
        if m <= K:
            raise ConfigurationError(f"graham needs m > K, got m={m}, K={K}")

    def assign(self, state, p, scenarios):
        self.check(state.m, state.K)
        s = math.ceil(state.m / state.K) - 1
        return favorable_machine(state.loads, s, scenarios)


def graham_bound(m: int, K: int) -> Fraction:
    """(m-1)/ceil(m/K) + 1."""
    return Fraction(m - 1, math.ceil(m / K)) + 1


def graham_scenarios_assign(state, p, scenarios) -> int:
    return Graham().assign(state, p, scenarios)


class Greedy(OnlineAlgorithm):
    """Minimize the resulting max load over the job's scenarios; lowest index on ties."""

    name = "greedy"

    def assign(self, state, p, scenarios):
        best_i, best_v = 1, None
        for i, row in enumerate(state.loads, 1):
            v = _max_after(row, p, scenarios)
            if best_v is None or v < best_v:
                best_i, best_v = i, v
        return best_i


def greedy_assign(state, p, scenarios) -> int:
    return Greedy().assign(state, p, scenarios)


class FirstFit(OnlineAlgorithm):
    """Lowest machine that keeps the makespan; greedy when none does."""

    name = "first-fit"

    def assign(self, state, p, scenarios):
        for i, row in enumerate(state.loads, 1):
            if _max_after(row, p, scenarios) <= state.ms:
                return i
        return Greedy().assign(state, p, scenarios)


class BalancedFirstFit(OnlineAlgorithm):
    """Among machines that keep the makespan, the one with least total load; greedy otherwise."""

    name = "balanced-first-fit"

    def assign(self, state, p, scenarios):
        fits = [(sum(row), i) for i, row in enumerate(state.loads, 1) if _max_after(row, p, scenarios) <= state.ms]
        if fits:
            return min(fits)[1]
        return Greedy().assign(state, p, scenarios)


class Fixed(OnlineAlgorithm):
    """Seeded deterministic baseline: a pseudo-random machine keyed by seed and full history."""

    def __init__(self, seed):
        self.seed = seed
        self.name = f"fixed:{seed}"

    def assign(self, state, p, scenarios):
        key = f"{self.seed}|{state.tau}|{[(str(j.p), sorted(j.scenarios)) for j in state.jobs]}|{p}|{sorted(scenarios)}"
        return random.Random(key).randint(1, state.m)


# --- two machines, two scenarios ---------------------------------------------------

def rule1_machine(state) -> int:
    """Rule 1 for a double-scenario job: the machine that did not attain the makespan;
    on a tie, the machine of the previous job (machine 1 for the first job)."""
    a, b = state.machine_max(1), state.machine_max(2)
    if a > b:
        return 2
    if b > a:
        return 1
    return state.tau[-1] if state.tau else 1


def check_invariant1(state: AssignmentState):
    """Truth of Invariant 1 (i) proxy ratio <= 5/3, (ii) anticipation <= 2, (iii) dominance."""
    if state.m != 2 or state.K != 2:
        raise ConfigurationError("Invariant 1 is stated for m = K = 2")
    if any(j.p > 0 for j in state.jobs):
        c1 = state.proxy_ratio() <= FIVE_THIRDS
    else:
        c1 = True
    c2 = anticipation_of_loads(state.loads) <= 2
    return c1, c2, dominance_ok(state.loads)


def dominance_ok(L) -> bool:
    for i in range(2):
        other = L[1 - i]
        if min(L[i]) > max(other):
            k = 0 if L[i][0] >= L[i][1] else 1
            return L[i][k] <= 2 * L[i][1 - k]
    return True


def alg53_snapshot(state, p):
    """(x1..x5) after the canonical renaming: loads before job j, then p_j."""
    L = state.loads
    i, k = makespan_cell(L)
    mi, sk = (i, 1 - i), (k, 1 - k)
    return (L[mi[0]][sk[0]], L[mi[0]][sk[1]], L[mi[1]][sk[0]], L[mi[1]][sk[1]], p)


class Alg53(OnlineAlgorithm):
    """The 5/3-competitive rule set for two machines and two scenarios."""

    name = "alg53"
    growing_scenarios = False

    def check(self, m, K):
        if m != 2 or K != 2:
            raise ConfigurationError(f"alg53 needs m = K = 2, got m={m}, K={K}")

    def assign(self, state, p, scenarios):
        self.check(state.m, state.K)
        i, k = makespan_cell(state.loads)
        first, second = i + 1, 2 - i  # true ids of renamed machines 1 and 2
        s1, s2 = k + 1, 2 - k  # true ids of renamed scenarios 1 and 2
        in1, in2 = s1 in scenarios, s2 in scenarios
        if in1 and not in2:
            return second
        if in2 and not in1:
            trial = state.with_job(p, scenarios, first)
            return first if all(check_invariant1(trial)) else second
        if in1 and in2:
            return rule1_machine(state)
        # inert job (no scenario): stay where the previous job went
        return state.tau[-1] if state.tau else 1


def alg53_assign(state, p, scenarios) -> int:
    return Alg53().assign(state, p, scenarios)


class Rule1Greedy(OnlineAlgorithm):
    """Rule 1 on double-scenario jobs, greedy otherwise."""

    name = "rule1"
    growing_scenarios = False

    def check(self, m, K):
        if m != 2 or K != 2:
            raise ConfigurationError("rule1 needs m = K = 2")

    def assign(self, state, p, scenarios):
        self.check(state.m, state.K)
        if len(scenarios) == 2:
            return rule1_machine(state)
        return Greedy().assign(state, p, scenarios)


def conforms_to_rule1(instance, tau) -> bool:
    """Replay check: every double-scenario job sits where Rule 1 puts it."""
    st = AssignmentState(instance.m, instance.K)
    for job, i in zip(instance.jobs, tau):
        if len(job.scenarios) == 2 and i != rule1_machine(st):
            return False
        st.push(job.p, job.scenarios, i)
    return True


# --- bingo cards for three scenarios, unit jobs ------------------------------------

TRIANGLE_TYPES = (frozenset({1}), frozenset({2}), frozenset({3}), frozenset({2, 3}), frozenset({1, 3}), frozenset({1, 2}))
FULL = frozenset({1, 2, 3})


def column_of(S) -> int:
    """Column holding triangle type S: {k} and [3] minus {k} share column k."""
    S = frozenset(S)
    if len(S) == 1:
        return next(iter(S))
    return next(iter(FULL - S))


def start_rows(m: int):
    """First row in each column's counting order."""
    return (1, math.ceil(m / 3) + 1, math.ceil(2 * m / 3) + 1)


def wrap(i: int, m: int) -> int:
    """1-based wraparound."""
    return (i - 1) % m + 1


def counting_order(m: int, col: int):
    """Rows of column col listed by counting index 1..m."""
    s = start_rows(m)[col - 1]
    return [wrap(s + t, m) for t in range(m)]


class BingoCard:
    __slots__ = ("m", "tri", "square", "order", "index")

    def __init__(self, m: int):
        self.m = m
        # tri[S][row] -> job id or None ; square[col][row] -> job id or None
        self.tri = {S: [None] * (m + 1) for S in TRIANGLE_TYPES}
        self.square = {c: [None] * (m + 1) for c in (1, 2, 3)}
        self.order = {c: counting_order(m, c) for c in (1, 2, 3)}
        self.index = {c: {r: t + 1 for t, r in enumerate(self.order[c])} for c in (1, 2, 3)}

    def cell_vacant(self, col: int, row: int) -> bool:
        S1 = frozenset({col})
        return self.square[col][row] is None and self.tri[S1][row] is None and self.tri[FULL - S1][row] is None

    def triangle_vacant(self, S, row: int) -> bool:
        return self.tri[S][row] is None and self.square[column_of(S)][row] is None

    def first_vacant_triangle(self, S):
        for r in self.order[column_of(S)]:
            if self.triangle_vacant(S, r):
                return r
        return None

    def best_square(self):
        """(col, row) of the vacant square with largest counting index, rightmost on ties."""
        best = None
        for c in (1, 2, 3):
            for r in reversed(self.order[c]):
                if self.cell_vacant(c, r):
                    key = (self.index[c][r], c)
                    if best is None or key > best[0]:
                        best = (key, c, r)
                    break
        return None if best is None else (best[1], best[2])

    def column_nonempty(self, col: int) -> bool:
        S1 = frozenset({col})
        return any(
            self.square[col][r] is not None or self.tri[S1][r] is not None or self.tri[FULL - S1][r] is not None
            for r in range(1, self.m + 1)
        )

    def column_bingo(self, col: int) -> bool:
        """Some scenario is represented in every cell of the column."""
        S1 = frozenset({col})
        for s in (1, 2, 3):
            tri = S1 if s == col else FULL - S1
            if all(self.square[col][r] is not None or self.tri[tri][r] is not None for r in range(1, self.m + 1)):
                return True
        return False


class BingoState:
    def __init__(self, m: int):
        self.m = m
        self.cards = []
        self.placements = []  # (card, kind, key, row) per job; kind in {"tri", "square", "inert"}

    def place(self, job_id: int, scenarios) -> int:
        S = frozenset(scenarios)
        if not S:
            self.placements.append((None, "inert", None, 1))
            return 1
        if S == FULL:
            for ci, card in enumerate(self.cards):
                spot = card.best_square()
                if spot is not None:
                    return self._square(ci, spot, job_id)
            self.cards.append(BingoCard(self.m))
            return self._square(len(self.cards) - 1, self.cards[-1].best_square(), job_id)
        for ci, card in enumerate(self.cards):
            r = card.first_vacant_triangle(S)
            if r is not None:
                return self._tri(ci, S, r, job_id)
        self.cards.append(BingoCard(self.m))
        return self._tri(len(self.cards) - 1, S, self.cards[-1].first_vacant_triangle(S), job_id)

    def _tri(self, ci, S, r, job_id):
        card = self.cards[ci]
        assert card.triangle_vacant(S, r), "triangle already occupied"
        card.tri[S][r] = job_id
        self.placements.append((ci, "tri", S, r))
        return r

    def _square(self, ci, spot, job_id):
        c, r = spot
        card = self.cards[ci]
        assert card.cell_vacant(c, r), "square already occupied"
        card.square[c][r] = job_id
        self.placements.append((ci, "square", c, r))
        return r

    def audit_no_double_occupancy(self) -> bool:
        seen = set()
        for ci, kind, key, r in self.placements:
            if kind == "inert":
                continue
            if kind == "tri":
                cells = [(ci, "tri", key, r)]
                clash = (ci, "square", column_of(key), r)
            else:
                cells = [(ci, "square", key, r)]
                clash = None
            for c in cells:
                if c in seen:
                    return False
                seen.add(c)
            if clash in seen:
                return False
        for ci, kind, key, r in self.placements:
            if kind == "square":
                S1 = frozenset({key})
                if (ci, "tri", S1, r) in seen or (ci, "tri", FULL - S1, r) in seen:
                    return False
        return True

    def open_columns(self):
        """For each column index, the cards whose column is non-empty and not column bingo."""
        return {c: [ci for ci, card in enumerate(self.cards) if card.column_nonempty(c) and not card.column_bingo(c)] for c in (1, 2, 3)}

    def audit_single_open_column(self) -> bool:
        return all(len(v) <= 1 for v in self.open_columns().values())


class Bingo(OnlineAlgorithm):
    """Round-robin bingo cards for K = 3 and unit jobs."""

    name = "bingo"
    growing_scenarios = False

    def __init__(self):
        self._bs = None
        self._hist = None

    def check(self, m, K):
        if K != 3:
            raise ConfigurationError(f"bingo needs K = 3, got K={K}")

    def state_for(self, state) -> BingoState:
        hist = [(j.scenarios, i) for j, i in zip(state.jobs, state.tau)]
        if self._bs is None or self._hist != hist or self._bs.m != state.m:
            bs = BingoState(state.m)
            for jid, (S, i) in enumerate(hist, 1):
                got = bs.place(jid, S)
                if got != i:
                    raise ValueError("history was not produced by the bingo algorithm")
            self._bs, self._hist = bs, hist
        return self._bs

    def assign(self, state, p, scenarios):
        self.check(state.m, state.K)
        if p != 1:
            raise UnsupportedInstance("bingo handles unit processing times only")
        bs = self.state_for(state)
        i = bs.place(state.n + 1, scenarios)
        self._hist = self._hist + [(frozenset(scenarios), i)]
        return i


def bingo_assign(state: BingoState, p, scenarios) -> int:
    if p != 1:
        raise UnsupportedInstance("bingo handles unit processing times only")
    return state.place(len(state.placements) + 1, scenarios)


ALGORITHMS = {
    "graham": Graham,
    "alg53": Alg53,
    "bingo": Bingo,
    "greedy": Greedy,
    "first-fit": FirstFit,
    "balanced-first-fit": BalancedFirstFit,
    "rule1": Rule1Greedy,
}


def get_algorithm(name: str) -> OnlineAlgorithm:
    if name.startswith("fixed:"):
        return Fixed(name.split(":", 1)[1])
    try:
        return ALGORITHMS[name]()
    except KeyError:
        raise KeyError(f"unknown algorithm {name!r}; known: {sorted(ALGORITHMS)} and fixed:<seed>") from None


def run_online(algorithm: OnlineAlgorithm, instance) -> AssignmentState:
    """Feed the jobs of a static instance in order."""
    algorithm.check(instance.m, instance.K)
    st = AssignmentState(instance.m, instance.K)
    for job in instance.jobs:
        st.push(job.p, job.scenarios, algorithm.assign(st, job.p, job.scenarios))
    return st

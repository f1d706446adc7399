"""Exact numbers, instances, loads and the per-schedule measures.

Machines, scenarios and jobs are 1-based in every public signature.
Internally, lists are 0-based.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Sequence, Union

ROOT = 17


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


class Weight:
    """An element a + b*sqrt(17) of the real quadratic field, a and b rational.

    Equality, hashing and ordering agree with int and Fraction when b == 0.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = a if type(a) is Fraction else Fraction(a)
        self.b = b if type(b) is Fraction else Fraction(b)

    @classmethod
    def sqrt17(cls) -> "Weight":
        return cls(0, 1)

    def is_rational(self) -> bool:
        return self.b == 0

    def conjugate(self) -> "Weight":
        return Weight(self.a, -self.b)

    def sign(self) -> int:
        sa, sb = _sign(self.a), _sign(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with 17 b^2, never equal as sqrt(17) is irrational
        return sa if self.a * self.a > ROOT * self.b * self.b else sb

    # arithmetic
    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Weight(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Weight(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Weight(self.a * o.a + ROOT * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        norm = o.a * o.a - ROOT * o.b * o.b
        if norm == 0:
            raise ZeroDivisionError("division by zero Weight")
        num = self * o.conjugate()
        return Weight(num.a / norm, num.b / norm)

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return Weight(-self.a, -self.b)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    # comparisons
    def _cmp(self, other):
        o = _coerce(other)
        if o is None:
            return None
        return Weight(self.a - o.a, self.b - o.b).sign()

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(ROOT)

    def decimal(self, digits: int = 30) -> str:
        """Display string with `digits` significant digits."""
        with localcontext() as ctx:
            ctx.prec = digits + 10
            v = _dec(self.a) + _dec(self.b) * Decimal(ROOT).sqrt()
            ctx.prec = digits
            return str(+v)

    def __repr__(self):
        if self.b == 0:
            return f"Weight({self.a})"
        return f"Weight({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt17"
        op = "+" if self.b > 0 else "-"
        return f"{self.a} {op} {abs(self.b)}*sqrt17"


def _dec(q: Fraction) -> Decimal:
    return Decimal(q.numerator) / Decimal(q.denominator)


def _coerce(x):
    if type(x) is Weight:
        return x
    if isinstance(x, (int, Fraction)):
        return Weight(x)
    return None


Num = Union[int, Fraction, Weight]


def exact(x) -> Num:
    """Normalize to an exact number: Fraction when rational, Weight otherwise.

    Accepts ints, Fractions, Weights, strings like "3/4", and the JSON dict form.
    Floats are refused since they are not exact.
    """
    if isinstance(x, bool):
        raise TypeError("bool is not a processing time")
    if isinstance(x, Weight):
        return x.a if x.b == 0 else x
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, dict):
        return exact(Weight(Fraction(str(x.get("a", "0"))), Fraction(str(x.get("b", "0")))))
    raise TypeError(f"not an exact number: {x!r}")


def as_weight(x) -> Weight:
    x = exact(x)
    return x if isinstance(x, Weight) else Weight(x)


def num_to_json(x):
    x = exact(x)
    if isinstance(x, Weight):
        return {"a": str(x.a), "b": str(x.b)}
    return str(x)


def num_str(x) -> str:
    x = exact(x)
    return str(x)


def num_decimal(x, digits: int = 30) -> str:
    if x == math.inf:
        return "inf"
    return as_weight(x).decimal(digits)


def ratio(num, den):
    """num/den with the conventions 0/0 = 1 and x/0 = inf for x > 0."""
    if den == 0:
        return Fraction(1) if num == 0 else math.inf
    if isinstance(num, Weight) or isinstance(den, Weight):
        return exact(as_weight(num) / as_weight(den))
    return Fraction(num) / Fraction(den)


class InvalidInstance(ValueError):
    pass


class InvalidAssignment(ValueError):
    pass


@dataclass(frozen=True)
class Job:
    p: Num
    scenarios: frozenset

    def __post_init__(self):
        object.__setattr__(self, "p", exact(self.p))
        object.__setattr__(self, "scenarios", frozenset(self.scenarios))


@dataclass(frozen=True)
class Instance:
    """An OMSS instance: m machines, K scenarios, jobs in reveal order."""

    m: int
    K: int
    jobs: tuple = ()

    def __post_init__(self):
        jobs = tuple(j if isinstance(j, Job) else Job(*j) for j in self.jobs)
        object.__setattr__(self, "jobs", jobs)
        if self.m < 1:
            raise InvalidInstance("need at least one machine")
        if self.K < 0:
            raise InvalidInstance("negative scenario count")
        for idx, job in enumerate(jobs, 1):
            if job.p < 0:
                raise InvalidInstance(f"job {idx} has negative weight")
            for k in job.scenarios:
                if not (isinstance(k, int) and 1 <= k <= self.K):
                    raise InvalidInstance(f"job {idx} names scenario {k} outside 1..{self.K}")

    @property
    def n(self) -> int:
        return len(self.jobs)

    @property
    def p(self) -> tuple:
        return tuple(j.p for j in self.jobs)

    def scenario(self, k: int) -> frozenset:
        """S_k as a set of 1-based job indices."""
        return frozenset(i for i, j in enumerate(self.jobs, 1) if k in j.scenarios)

    def scenario_weight(self, k: int):
        return sum((j.p for j in self.jobs if k in j.scenarios), Fraction(0))

    def is_unit(self) -> bool:
        return all(j.p == 1 for j in self.jobs)

    def is_rational(self) -> bool:
        return not any(isinstance(j.p, Weight) for j in self.jobs)

    def prefix(self, t: int) -> "Instance":
        return Instance(self.m, self.K, self.jobs[:t])

    def replace_job(self, j: int, p=None, scenarios=None) -> "Instance":
        old = self.jobs[j - 1]
        new = Job(old.p if p is None else p, old.scenarios if scenarios is None else scenarios)
        return Instance(self.m, self.K, self.jobs[: j - 1] + (new,) + self.jobs[j:])

    def with_m(self, m: int) -> "Instance":
        return Instance(m, self.K, self.jobs)

    def integer_scaled(self):
        """(instance with integer weights, scale) for rational instances; scale is a positive int."""
        if not self.is_rational():
            raise InvalidInstance("irrational weights cannot be scaled to integers")
        scale = 1
        for j in self.jobs:
            scale = math.lcm(scale, j.p.denominator)
        return [int(j.p * scale) for j in self.jobs], scale

    # JSON
    def to_json(self) -> dict:
        return {
            "m": self.m,
            "K": self.K,
            "jobs": [{"p": num_to_json(j.p), "scenarios": sorted(j.scenarios)} for j in self.jobs],
        }

    @classmethod
    def from_json(cls, data) -> "Instance":
        if isinstance(data, str):
            data = json.loads(data)
        jobs = [Job(exact(j["p"]), frozenset(int(k) for k in j.get("scenarios", []))) for j in data["jobs"]]
        return cls(int(data["m"]), int(data["K"]), tuple(jobs))

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def make_instance(m: int, K: int, ps: Iterable, scenarios: Iterable) -> Instance:
    return Instance(m, K, tuple(Job(p, s) for p, s in zip(ps, scenarios)))


def instance_from_sets(m: int, p: Sequence, sets: Sequence) -> Instance:
    """Build from per-scenario job sets S_1..S_K (1-based job ids)."""
    K = len(sets)
    scen = [set() for _ in p]
    for k, S in enumerate(sets, 1):
        for j in S:
            scen[j - 1].add(k)
    return make_instance(m, K, p, scen)


class LoadMatrix:
    """m x K table of p(J_i ∩ S_k); indexed lm[i, k] with 1-based i and k."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(r) for r in rows)

    @classmethod
    def zeros(cls, m: int, K: int) -> "LoadMatrix":
        return cls([[Fraction(0)] * K for _ in range(m)])

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def K(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ik):
        i, k = ik
        return self.rows[i - 1][k - 1]

    def __eq__(self, other):
        return isinstance(other, LoadMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def machine_max(self, i: int):
        row = self.rows[i - 1]
        return max(row) if row else Fraction(0)

    def __repr__(self):
        return f"LoadMatrix({[[num_str(x) for x in r] for r in self.rows]})"


def _check_tau(instance: Instance, tau: Sequence[int]):
    if len(tau) > instance.n:
        raise InvalidAssignment("assignment longer than the instance")
    for j, i in enumerate(tau, 1):
        if not (isinstance(i, int) and 1 <= i <= instance.m):
            raise InvalidAssignment(f"job {j} sent to machine {i} outside 1..{instance.m}")


def load_matrix(instance: Instance, tau: Sequence[int]) -> LoadMatrix:
    _check_tau(instance, tau)
    rows = [[Fraction(0)] * instance.K for _ in range(instance.m)]
    for job, i in zip(instance.jobs, tau):
        row = rows[i - 1]
        for k in job.scenarios:
            row[k - 1] = row[k - 1] + job.p
    return LoadMatrix(rows)


def makespan(loads: LoadMatrix):
    best = Fraction(0)
    for r in loads.rows:
        for x in r:
            if x > best:
                best = x
    return best


def schedule_makespan(instance: Instance, tau: Sequence[int]):
    return makespan(load_matrix(instance, tau))


def completion_time(instance: Instance, tau: Sequence[int], j: int):
    """C_j = max over scenarios k containing j of p(J_i ∩ S_k ∩ [j])."""
    if not 1 <= j <= len(tau):
        raise InvalidAssignment(f"job {j} is not assigned")
    _check_tau(instance, tau)
    i = tau[j - 1]
    job = instance.jobs[j - 1]
    best = Fraction(0)
    for k in job.scenarios:
        c = sum((q.p for q, mi in zip(instance.jobs[:j], tau) if mi == i and k in q.scenarios), Fraction(0))
        best = max(best, c)
    return best


class AssignmentState:
    """Incremental schedule of a job prefix.

    Tracks loads, completion times C_j (and per-scenario C_j^k), the running makespan
    and the largest weight among jobs whose completion time equals the makespan.
    Owned by one game loop; use copy() or with_job() for a fresh value.
    """

    __slots__ = ("m", "K", "tau", "loads", "jobs", "completion", "completion_k", "ms", "top_p", "scen_total")

    def __init__(self, m: int, K: int):
        self.m = m
        self.K = K
        self.tau = []
        self.jobs = []
        self.loads = [[Fraction(0)] * K for _ in range(m)]
        self.completion = []
        self.completion_k = []
        self.ms = Fraction(0)
        self.top_p = None
        self.scen_total = [Fraction(0)] * K

    @classmethod
    def replay(cls, instance: Instance, tau: Sequence[int]) -> "AssignmentState":
        _check_tau(instance, tau)
        st = cls(instance.m, instance.K)
        for job, i in zip(instance.jobs, tau):
            st.push(job.p, job.scenarios, i)
        return st

    def copy(self) -> "AssignmentState":
        st = AssignmentState.__new__(AssignmentState)
        st.m, st.K = self.m, self.K
        st.tau = list(self.tau)
        st.jobs = list(self.jobs)
        st.loads = [list(r) for r in self.loads]
        st.completion = list(self.completion)
        st.completion_k = list(self.completion_k)
        st.ms = self.ms
        st.top_p = self.top_p
        st.scen_total = list(self.scen_total)
        return st

    def push(self, p, scenarios, machine: int) -> None:
        if not 1 <= machine <= self.m:
            raise InvalidAssignment(f"machine {machine} outside 1..{self.m}")
        row = self.loads[machine - 1]
        ck = {}
        c = Fraction(0)
        for k in scenarios:
            v = row[k - 1] + p
            row[k - 1] = v
            self.scen_total[k - 1] = self.scen_total[k - 1] + p
            ck[k] = v
            if v > c:
                c = v
        self.tau.append(machine)
        self.jobs.append(Job(p, scenarios))
        self.completion.append(c)
        self.completion_k.append(ck)
        # older jobs finish no later than the old makespan, so only job j can reach a new one
        if c > self.ms:
            self.ms = c
            self.top_p = p
        elif c == self.ms:
            self.top_p = p if self.top_p is None or p > self.top_p else self.top_p

    def add_scenario(self, members: Iterable[int] = ()) -> int:
        """Open scenario K+1 already holding the listed earlier jobs (1-based).

        Used when a hyperedge first shows up around nodes that arrived before it. Loads,
        totals and the makespan are updated; completion times of old jobs are not.
        """
        self.K += 1
        k = self.K
        for row in self.loads:
            row.append(Fraction(0))
        self.scen_total.append(Fraction(0))
        for j in members:
            job = self.jobs[j - 1]
            self.jobs[j - 1] = Job(job.p, job.scenarios | {k})
            row = self.loads[self.tau[j - 1] - 1]
            row[k - 1] += job.p
            self.scen_total[k - 1] += job.p
            if row[k - 1] > self.ms:
                self.ms = row[k - 1]
        return k

    def with_job(self, p, scenarios, machine: int) -> "AssignmentState":
        st = self.copy()
        st.push(p, scenarios, machine)
        return st

    @property
    def n(self) -> int:
        return len(self.tau)

    @property
    def makespan(self):
        return self.ms

    def load_matrix(self) -> LoadMatrix:
        return LoadMatrix(self.loads)

    def instance(self) -> Instance:
        return Instance(self.m, self.K, tuple(self.jobs))

    def machine_max(self, i: int):
        row = self.loads[i - 1]
        return max(row) if row else Fraction(0)

    def proxy_ratio(self):
        """Proxy ratio of the prefix read as a complete schedule (m = 2)."""
        if self.m != 2:
            raise ValueError("proxy ratio is defined for two machines")
        if not self.jobs or all(j.p == 0 for j in self.jobs):
            raise ValueError("proxy ratio undefined: no job of positive weight")
        half = max(self.scen_total, default=Fraction(0)) / 2
        top = self.top_p if self.top_p is not None else Fraction(0)
        den = half if half > top else top
        return ratio(self.ms, den)


def proxy_ratio(instance: Instance, tau: Sequence[int]):
    """max_{i,k} p(S_k ∩ J_i) over max{max_k p(S_k)/2, max{p_j : C_j = makespan}}; m = 2 only."""
    if instance.m != 2:
        raise ValueError("proxy ratio is defined for two machines")
    if len(tau) != instance.n:
        raise InvalidAssignment("proxy ratio needs a complete assignment")
    return AssignmentState.replay(instance, tau).proxy_ratio()


def _relabel(L, i: int, k: int):
    """Rename so that cell (i, k) (0-based) becomes (0, 0)."""
    mi = (i, 1 - i)
    sk = (k, 1 - k)
    return [[L[mi[a]][sk[b]] for b in range(2)] for a in range(2)]


def _alpha(R):
    l11, l12 = R[0]
    l21, l22 = R[1]
    if l11 == 0:
        return Fraction(1)
    if not l22 > l21:
        return Fraction(0)
    return ratio(l11, max(l12, l21 + l11 - l22))


def makespan_cell(L):
    """0-based (i, k) of the largest load, lowest machine then lowest scenario on ties."""
    best = None
    for i, row in enumerate(L):
        for k, x in enumerate(row):
            if best is None or x > L[best[0]][best[1]]:
                best = (i, k)
    return best


def anticipation_of_loads(L) -> Num:
    """Anticipation of a 2x2 load table (rows are machines)."""
    if isinstance(L, LoadMatrix):
        L = L.rows
    i, k = makespan_cell(L)
    return _alpha(_relabel(L, i, k))


def anticipation_all(L) -> dict:
    """Diagnostic: anticipation under every relabeling whose (1,1) cell attains the makespan."""
    if isinstance(L, LoadMatrix):
        L = L.rows
    top = max(max(r) for r in L)
    return {(i + 1, k + 1): _alpha(_relabel(L, i, k)) for i in range(2) for k in range(2) if L[i][k] == top}


def anticipation(instance: Instance, tau: Sequence[int]) -> Num:
    if instance.m != 2 or instance.K != 2:
        raise ValueError("anticipation is defined for m = K = 2")
    return anticipation_of_loads(load_matrix(instance, tau))

"""Exact offline optimum by branch and bound, plus certificate checks."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import Instance, InvalidAssignment, exact, load_matrix, makespan

DEFAULT_CAP = 16


class OracleRefused(ValueError):
    """Raised when an instance is too large for exhaustive search."""


@dataclass(frozen=True)
class OptResult:
    value: object
    witness: tuple


def lower_bound_avg(instance: Instance):
    """max(max_j p_j, max_k p(S_k)/m)."""
    best = max((j.p for j in instance.jobs), default=Fraction(0))
    for k in range(1, instance.K + 1):
        avg = instance.scenario_weight(k) / instance.m
        if avg > best:
            best = avg
    return exact(best)


def _search(ps, scen, m, K, lb, zero):
    n = len(ps)
    order = sorted(range(n), key=lambda j: ps[j], reverse=True)
    loads = [[zero] * K for _ in range(m)]

    # greedy incumbent in branching order
    assign = [0] * n
    gl = [[zero] * K for _ in range(m)]
    inc = zero
    for j in order:
        best_i, best_v = 0, None
        for i in range(m):
            v = max((gl[i][k] + ps[j] for k in scen[j]), default=zero)
            if best_v is None or v < best_v:
                best_i, best_v = i, v
        for k in scen[j]:
            gl[best_i][k] += ps[j]
        assign[j] = best_i
        if best_v > inc:
            inc = best_v
    best = [inc, list(assign)]
    if inc == lb:
        return best

    cur_assign = [0] * n
    done = [False]

    def rec(idx, used, cur):
        if idx == n:
            best[0] = cur
            best[1] = list(cur_assign)
            if cur == lb:
                done[0] = True
            return
        j = order[idx]
        p = ps[j]
        sc = scen[j]
        for i in range(min(used + 1, m)):
            row = loads[i]
            new = cur
            for k in sc:
                v = row[k] + p
                if v > new:
                    new = v
            if new >= best[0]:
                continue
            for k in sc:
                row[k] += p
            cur_assign[j] = i
            rec(idx + 1, used if i < used else i + 1, new)
            for k in sc:
                row[k] -= p
            if done[0]:
                return

    rec(0, 0, zero)
    return best


def exact_opt(instance: Instance, cap: int = DEFAULT_CAP) -> OptResult:
    """Minimal scenario makespan over all m^n assignments.

    Jobs are branched in decreasing weight; a job may open at most one new machine.
    Rational instances are scaled to integers first, which is exact.
    """
    if instance.n > cap:
        raise OracleRefused(f"{instance.n} jobs exceed the oracle cap {cap}; verify a certificate instead")
    live = [j for j, job in enumerate(instance.jobs) if job.p > 0 and job.scenarios]
    if not live:
        return OptResult(Fraction(0), tuple([1] * instance.n))
    scen = [tuple(k - 1 for k in instance.jobs[j].scenarios) for j in live]
    lb = lower_bound_avg(instance)
    if instance.is_rational():
        ints, scale = instance.integer_scaled()
        ps = [ints[j] for j in live]
        # an integer optimum is at least ceil(lb*scale)
        lbi = -((-lb * scale).numerator // (lb * scale).denominator)
        value, assign = _search(ps, scen, instance.m, instance.K, lbi, 0)
        value = Fraction(value, scale)
    else:
        ps = [instance.jobs[j].p for j in live]
        value, assign = _search(ps, scen, instance.m, instance.K, lb, Fraction(0))
        value = exact(value)
    tau = [1] * instance.n
    for idx, j in enumerate(live):
        tau[j] = assign[idx] + 1
    return OptResult(value, tuple(tau))


def brute_force_opt(instance: Instance) -> OptResult:
    """Unpruned enumeration of all m^n assignments; the independent route."""
    best = None
    for tau in itertools.product(range(1, instance.m + 1), repeat=instance.n):
        per = {}
        for job, i in zip(instance.jobs, tau):
            for k in job.scenarios:
                per[i, k] = per.get((i, k), 0) + job.p
        v = max(per.values(), default=Fraction(0))
        if best is None or v < best.value:
            best = OptResult(exact(v), tau)
    return best


def verify_certificate(instance: Instance, assignment: Sequence[int], claimed) -> bool:
    """True iff the assignment is complete and its makespan is at most `claimed`."""
    if len(assignment) != instance.n:
        raise InvalidAssignment("certificate must assign every job")
    return makespan(load_matrix(instance, list(assignment))) <= claimed

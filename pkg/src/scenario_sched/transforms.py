"""Instance surgery for two machines and two scenarios: deleting and cutting jobs.

Both transforms replay the algorithm from scratch on the new instance; the claims
they come with are about an algorithm's behavior, not about the instance alone.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algorithms import OnlineAlgorithm, run_online
from .core import AssignmentState, Instance, Job


class NotCuttable(ValueError):
    pass


@dataclass
class TransformReport:
    kind: str
    at: int
    before: Instance
    after: Instance
    rho_before: object
    rho_after: object
    flags: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        from .core import num_to_json

        def enc(x):
            return None if x is None else num_to_json(x)

        return {
            "kind": self.kind,
            "at": self.at,
            "before": self.before.to_json(),
            "after": self.after.to_json(),
            "rho_before": enc(self.rho_before),
            "rho_after": enc(self.rho_after),
            "flags": self.flags,
        }


def _proxy(st: AssignmentState):
    if not any(j.p > 0 for j in st.jobs):
        return None
    return st.proxy_ratio()


def delete_job(instance: Instance, j: int) -> Instance:
    """Same instance with p_j = 0; memberships and indices untouched."""
    if not 1 <= j <= instance.n:
        raise IndexError(f"job {j} outside 1..{instance.n}")
    return instance.replace_job(j, p=Fraction(0))


def last_single_job(instance: Instance):
    """Largest j with j in exactly one of S_1, S_2 (None if there is none)."""
    for j in range(instance.n, 0, -1):
        if len(instance.jobs[j - 1].scenarios) == 1:
            return j
    return None


def _argmax_set(row):
    top = max(row)
    return {k for k, x in enumerate(row) if x == top}


def deletion_conditions(instance: Instance, tau, j: int) -> dict:
    """Conditions at job j under which deleting it should not lower the ratio.

    `stable`: the dominant scenario of j's machine is unique and the same before and
    after job j (ties count as unstable and raise `tie`).
    `hidden`: additionally, j lies only in the non-dominant scenario, so the machine's
    max load never sees it. The argument for monotonicity needs this stronger form.
    """
    before = AssignmentState.replay(instance, tau[: j - 1])
    after = AssignmentState.replay(instance, tau[:j])
    i = tau[j - 1] - 1
    a, b = _argmax_set(before.loads[i]), _argmax_set(after.loads[i])
    tie = len(a) > 1 or len(b) > 1
    stable = not tie and a == b
    hidden = stable and not any(k - 1 in b for k in instance.jobs[j - 1].scenarios)
    return {"stable": stable, "tie": tie, "hidden": hidden}


def deletion_hypothesis(instance: Instance, tau, j: int):
    """(holds, tie) for the literal argmax-stability hypothesis."""
    c = deletion_conditions(instance, tau, j)
    return c["stable"], c["tie"]


def delete_report(instance: Instance, j: int, algorithm: OnlineAlgorithm) -> TransformReport:
    st = run_online(algorithm, instance)
    new = delete_job(instance, j)
    st2 = run_online(algorithm, new)
    cond = deletion_conditions(instance, st.tau, j)
    rb, ra = _proxy(st), _proxy(st2)
    flags = {
        "largest_single": j == last_single_job(instance),
        "hypothesis": cond["stable"],
        "hidden": cond["hidden"],
        "argmax_tie": cond["tie"],
        "monotone": rb is None or ra is None or ra >= rb,
    }
    return TransformReport("delete", j, instance, new, rb, ra, flags)


def cut_parts(instance: Instance, t: int, algorithm: OnlineAlgorithm):
    """(p'_t, p'_{t+1}) and the replayed state, after checking the preconditions."""
    if instance.m != 2 or instance.K != 2:
        raise NotCuttable("cutting is defined for m = K = 2")
    if not 1 <= t <= instance.n:
        raise IndexError(f"job {t} outside 1..{instance.n}")
    if instance.jobs[t - 1].scenarios != frozenset({1, 2}):
        raise NotCuttable(f"job {t} is not in both scenarios")
    st = run_online(algorithm, instance)
    prev = AssignmentState.replay(instance, st.tau[: t - 1])
    cur = AssignmentState.replay(instance, st.tau[:t])
    if not cur.ms > prev.ms:
        raise NotCuttable(f"makespan does not grow at job {t}")
    low = min(prev.machine_max(1), prev.machine_max(2))
    p1 = prev.ms - low
    p2 = instance.jobs[t - 1].p - p1
    assert p2 > 0, "second part of a cut job must be positive"
    return p1, p2, st


def cut_job(instance: Instance, t: int, algorithm: OnlineAlgorithm) -> Instance:
    """Split double-scenario job t into two consecutive double-scenario jobs.

    The first part brings the machine receiving it up to the previous makespan; the
    second part carries the rest. Later jobs shift by one index.
    """
    p1, p2, _ = cut_parts(instance, t, algorithm)
    both = frozenset({1, 2})
    jobs = instance.jobs[: t - 1] + (Job(p1, both), Job(p2, both)) + instance.jobs[t:]
    return Instance(instance.m, instance.K, jobs)


def cut_report(instance: Instance, t: int, algorithm: OnlineAlgorithm) -> TransformReport:
    p1, p2, st = cut_parts(instance, t, algorithm)
    new = cut_job(instance, t, algorithm)
    st2 = run_online(algorithm, new)
    pre = AssignmentState.replay(instance, st.tau[: t - 1])
    pre2 = AssignmentState.replay(new, st2.tau[: t - 1])
    after_t = AssignmentState.replay(new, st2.tau[:t])
    rb, ra = _proxy(st), _proxy(st2)
    flags = {
        "prefix_loads_equal": pre.loads == pre2.loads,
        "balanced_after_t": after_t.machine_max(1) == after_t.machine_max(2),
        "ratio_not_smaller": rb is None or ra is None or ra >= rb,
        "same_machine_for_parts": st2.tau[t - 1] == st2.tau[t],
        "p_t": str(p1),
        "p_t_plus_1": str(p2),
    }
    return TransformReport("cut", t, instance, new, rb, ra, flags)


def bottleneck_shape(instance: Instance, tau) -> bool:
    """The reduced worst-case shape: job n lies in both scenarios, and the last
    single-scenario job j has C_j = C_{n-1} in the schedule `tau`."""
    n = instance.n
    if n < 2 or instance.jobs[-1].scenarios != frozenset({1, 2}):
        return False
    j = last_single_job(instance)
    if j is None or j > n - 1:
        return False
    st = AssignmentState.replay(instance, tau)
    return st.completion[j - 1] == st.completion[n - 2]

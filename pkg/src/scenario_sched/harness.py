"""Games between online algorithms and adversaries, exhaustive minimax, random instances
and the desk-scale table of bounds."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .adversaries import Adversary, JobReveal, NodeReveal, Stop, TARGET_53
from .algorithms import ALGORITHMS, ConfigurationError, OnlineAlgorithm, get_algorithm, graham_bound, run_online
from .core import (
    AssignmentState,
    Instance,
    Job,
    load_matrix,
    makespan,
    num_decimal,
    num_to_json,
    ratio,
)
from .oracle import exact_opt, verify_certificate


class CertificateError(AssertionError):
    """An adversary shipped a certificate that does not verify."""


class Inconclusive(Exception):
    """Minimax search hit its budget before deciding."""


@dataclass
class GameResult:
    algorithm: str
    adversary: str
    instance: Instance
    tau: list
    makespan: object
    opt: object
    ratio: object
    opt_source: str
    success: bool = True
    note: str = ""
    audits: dict = field(default_factory=dict)
    transcript: list = field(default_factory=list)

    @property
    def audit_ok(self) -> bool:
        return all(fail == 0 for _, fail in self.audits.values())

    def to_json(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "adversary": self.adversary,
            "instance": self.instance.to_json(),
            "assignment": list(self.tau),
            "transcript": self.transcript,
            "makespan": num_to_json(self.makespan),
            "opt": num_to_json(self.opt),
            "ratio": num_to_json(self.ratio),
            "ratio_decimal": num_decimal(self.ratio),
            "opt_source": self.opt_source,
            "success": self.success,
            "note": self.note,
            "audits": {k: {"checks": c, "failures": f} for k, (c, f) in self.audits.items()},
            "audit_ok": self.audit_ok,
        }


def _replay_audit(instance: Instance, tau, st: AssignmentState, trace) -> dict:
    fresh = load_matrix(instance, tau)
    same = [list(r) for r in fresh.rows] == [list(r) for r in st.loads]
    mono = all(a <= b for a, b in zip(trace, trace[1:]))
    return {"replay": [1, 0 if same else 1], "monotone_makespan": [1, 0 if mono else 1]}


def run_static(algorithm: OnlineAlgorithm, instance: Instance, cap: int = 16) -> GameResult:
    st = run_online(algorithm, instance)
    opt = exact_opt(instance, cap=cap).value
    trace = [AssignmentState.replay(instance, st.tau[:t]).ms for t in range(1, instance.n + 1)] if instance.n <= 40 else []
    return GameResult(algorithm.name, "static", instance, list(st.tau), st.ms, opt, ratio(st.ms, opt),
                      "oracle", audits=_replay_audit(instance, st.tau, st, trace))


class _Table:
    """The schedule being built while an adversary reveals jobs or nodes."""

    def __init__(self, adversary: Adversary):
        self.growing = adversary.K is None
        self.st = AssignmentState(adversary.m, 0 if self.growing else adversary.K)

    def job_of(self, rev):
        if isinstance(rev, NodeReveal):
            new = [self.st.add_scenario(c) for c in rev.creates]
            return Fraction(1), frozenset(rev.joins) | frozenset(new)
        return rev.p, frozenset(rev.scenarios)


def _check_compat(algorithm, adversary):
    if adversary.K is None:
        if not algorithm.growing_scenarios:
            raise ConfigurationError(f"{algorithm.name} cannot play a game whose scenarios keep appearing")
    else:
        algorithm.check(adversary.m, adversary.K)


def _settle(stop: Stop, st: AssignmentState):
    inst = st.instance()
    cert = stop.assignment(inst.n)
    if not verify_certificate(inst, cert, stop.claimed_opt):
        raise CertificateError(f"certificate does not witness {stop.claimed_opt}")
    return inst, ratio(st.ms, stop.claimed_opt)


def duel(algorithm: OnlineAlgorithm, adversary: Adversary) -> GameResult:
    """Alternate adversary reveals and algorithm answers until the adversary stops."""
    _check_compat(algorithm, adversary)
    table = _Table(adversary)
    st = table.st
    answers, trace, transcript = [], [], []
    while True:
        rev = adversary.next(answers)
        if isinstance(rev, Stop):
            break
        p, scen = table.job_of(rev)
        i = algorithm.assign(st, p, scen)
        st.push(p, scen, i)
        answers.append(i)
        trace.append(st.ms)
        transcript.append({"reveal": rev.to_json(), "machine": i})
    inst, r = _settle(rev, st)
    audits = {k: list(v) for k, v in adversary.audit.items()}
    audits.update(_replay_audit(inst, st.tau, st, trace))
    # the adversary's own view of the hypergraph must match the schedule's scenarios
    if adversary.H is not None:
        from .hypergraph import to_instance
        audits["hypergraph_matches"] = [1, 0 if to_instance(adversary.H, adversary.m) == inst else 1]
    return GameResult(algorithm.name, adversary.name, inst, list(st.tau), st.ms, rev.claimed_opt, r,
                      "certificate", rev.success, rev.note, audits, transcript)


def _play_prefix(factory, answers):
    adv = factory()
    table = _Table(adv)
    rev = adv.next([])
    for t, i in enumerate(answers):
        p, scen = table.job_of(rev)
        table.st.push(p, scen, i)
        rev = adv.next(answers[: t + 1])
    return adv, table, rev


def minimax_certify(adversary_factory, m: int, bound, depth_cap: int = 64, leaf_cap: int = 200000) -> bool:
    """True iff every sequence of answers ends in a verified Stop with ratio >= bound.

    Each prefix is replayed from a fresh adversary, which keeps the search independent
    of any state the adversary caches. Raises Inconclusive past the caps.
    """
    leaves = [0]

    def rec(answers):
        adv, table, rev = _play_prefix(adversary_factory, answers)
        if isinstance(rev, Stop):
            leaves[0] += 1
            if leaves[0] > leaf_cap:
                raise Inconclusive(f"more than {leaf_cap} leaves")
            if not adv.audit_ok():
                return False
            try:
                _, r = _settle(rev, table.st)
            except CertificateError:
                return False
            return rev.success and r >= bound
        if len(answers) >= depth_cap:
            raise Inconclusive(f"depth cap {depth_cap} reached")
        return all(rec(answers + [i]) for i in range(1, m + 1))

    return rec([])


def minimax_value(adversary_factory, m: int, depth_cap: int = 64):
    """Least ratio over all answer sequences (exhaustive)."""
    best = [None]

    def rec(answers):
        adv, table, rev = _play_prefix(adversary_factory, answers)
        if isinstance(rev, Stop):
            _, r = _settle(rev, table.st)
            if best[0] is None or r < best[0]:
                best[0] = r
            return
        if len(answers) >= depth_cap:
            raise Inconclusive(f"depth cap {depth_cap} reached")
        for i in range(1, m + 1):
            rec(answers + [i])

    rec([])
    return best[0]


# --- random instances -------------------------------------------------------------

def random_instance(m: int, K: int, n: int, weight_mode="unit", seed=0, density=None) -> Instance:
    """Reproducible random instance.

    weight_mode: "unit", or ("rational", max_num, max_den) for p = a/b with
    1 <= a <= max_num, 1 <= b <= max_den. Scenario sets are uniform over nonempty subsets
    of [K], or each scenario joins independently with probability `density` (redrawn
    while empty).
    """
    rng = random.Random(seed)
    jobs = []
    for _ in range(n):
        if weight_mode == "unit":
            p = Fraction(1)
        else:
            _, max_num, max_den = weight_mode
            p = Fraction(rng.randint(1, max_num), rng.randint(1, max_den))
        if K == 0:
            s = frozenset()
        elif density is None:
            mask = rng.randint(1, 2 ** K - 1)
            s = frozenset(k + 1 for k in range(K) if mask >> k & 1)
        else:
            s = frozenset()
            while not s:
                s = frozenset(k + 1 for k in range(K) if rng.random() < density)
        jobs.append(Job(p, s))
    return Instance(m, K, tuple(jobs))


def parse_weight_mode(text: str):
    """'unit' or 'rational:<max_num>/<max_den>'."""
    if text == "unit":
        return "unit"
    kind, _, rest = text.partition(":")
    if kind != "rational":
        raise ValueError(f"unknown weight mode {text!r}")
    a, _, b = (rest or "10/1").partition("/")
    return ("rational", int(a), int(b or 1))


# --- table of bounds ----------------------------------------------------------------

def classic_instance(m: int) -> Instance:
    """m(m-1) unit jobs then one job of size m, all in a single scenario."""
    jobs = [Job(1, {1})] * (m * (m - 1)) + [Job(m, {1})]
    return Instance(m, 1, tuple(jobs))


def _sweep(alg_name, m, K, count, n_max, weight_mode, seed):
    rng = random.Random(seed)
    worst = Fraction(0)
    for _ in range(count):
        n = rng.randint(1, n_max)
        inst = random_instance(m, K, n, weight_mode, rng.getrandbits(64))
        res = run_static(get_algorithm(alg_name), inst)
        if res.ratio > worst:
            worst = res.ratio
    return worst


def table(count: int = 200, seed: int = 0) -> list[dict]:
    """Desk-scale reproduction of the bounds table: empirical worst ratios from small
    sweeps next to the proven bounds, plus lower bounds reached by duels or minimax."""
    from .adversaries import CompositeAdversary, LB53Adversary, OMHC3Adversary

    rows = []
    w = _sweep("alg53", 2, 2, count, 8, ("rational", 10, 10), seed)
    lb = minimax_value(LB53Adversary, 2)
    rows.append({"setting": "m=K=2", "algorithm": "alg53", "upper_bound": Fraction(5, 3),
                 "empirical_max": w, "lower_bound": TARGET_53, "lower_bound_reached": lb})
    lb2 = minimax_value(lambda: CompositeAdversary(2), 2)
    rows.append({"setting": "m=2, K>=3", "algorithm": "-", "upper_bound": Fraction(2),
                 "empirical_max": None, "lower_bound": Fraction(2), "lower_bound_reached": lb2})
    for m in (3, 5):
        w = _sweep("bingo", m, 3, count, 10, "unit", seed + m)
        rows.append({"setting": f"m={m}, K=3, unit", "algorithm": "bingo", "upper_bound": Fraction(2),
                     "empirical_max": w, "lower_bound": None, "lower_bound_reached": None})
    for m, K in ((3, 2), (5, 2), (6, 4)):
        w = _sweep("graham", m, K, count, 8, ("rational", 10, 10), seed + 10 * m + K)
        rows.append({"setting": f"m={m}, K={K}", "algorithm": "graham", "upper_bound": graham_bound(m, K),
                     "empirical_max": w, "lower_bound": None, "lower_bound_reached": None})
    res = duel(get_algorithm("greedy"), OMHC3Adversary())
    rows.append({"setting": "m=3, unit (hypergraph)", "algorithm": "greedy", "upper_bound": None,
                 "empirical_max": None, "lower_bound": Fraction(3), "lower_bound_reached": res.ratio})
    return rows


def table_rows_json(rows) -> list[dict]:
    def enc(x):
        return None if x is None else {"exact": num_to_json(x), "decimal": num_decimal(x, 12)}

    return [{k: (enc(v) if k not in ("setting", "algorithm") else v) for k, v in r.items()} for r in rows]


def table_markdown(rows) -> str:
    cols = ["setting", "algorithm", "upper_bound", "empirical_max", "lower_bound", "lower_bound_reached"]
    out = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    for r in rows:
        cells = []
        for c in cols:
            v = r[c]
            cells.append("-" if v is None else v if isinstance(v, str) else num_decimal(v, 6))
        out.append("| " + " | ".join(cells) + " |")
    return "\n".join(out)


def table_csv(rows) -> str:
    import csv
    import io

    buf = io.StringIO()
    cols = ["setting", "algorithm", "upper_bound", "empirical_max", "lower_bound", "lower_bound_reached"]
    wr = csv.writer(buf)
    wr.writerow(cols)
    for r in rows:
        wr.writerow(["" if r[c] is None else r[c] if isinstance(r[c], str) else str(r[c]) for c in cols])
    return buf.getvalue()


SUITE = tuple(sorted(ALGORITHMS))

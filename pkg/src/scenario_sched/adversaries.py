"""Adaptive lower-bound opponents.

An adversary is a resumable state machine. `next(answers)` receives the machines (or
online colors) chosen so far, one per reveal, and returns the next `JobReveal` /
`NodeReveal` or a final `Stop` carrying an optimality certificate. Internally each
adversary is a generator that yields reveals and is sent the answers; nested
constructions compose with ``yield from``.

Colors: online colors are machine ids 1..m. Offline colors are 0..m-1 (for m = 3 they
are read as red, blue, yellow).
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import gadget as G
from .core import AssignmentState, Instance, Job, Weight, exact, instance_from_sets
from .hypergraph import (
    ActiveEdgeSet,
    Hypergraph,
    S_EDGES,
    forest_coloring,
    is_hyperforest,
    is_proper,
)
from .oracle import exact_opt

RED, BLUE, YELLOW = G.RED, G.BLUE, G.YELLOW


# --- reveals ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JobReveal:
    p: object
    scenarios: frozenset

    def to_json(self):
        from .core import num_to_json
        return {"p": num_to_json(self.p), "scenarios": sorted(self.scenarios)}


@dataclass(frozen=True)
class NodeReveal:
    """A unit job seen as a node: it extends the edges `joins` and creates one edge
    old ∪ {node} per entry of `creates`."""

    joins: tuple = ()
    creates: tuple = ()

    def extended(self, *edges) -> "NodeReveal":
        return NodeReveal(self.joins + tuple(edges), self.creates)

    def to_json(self):
        return {"joins": list(self.joins), "creates": [sorted(c) for c in self.creates]}


@dataclass
class Stop:
    """End of play. `certificate` is a machine per job (1-based) or an offline coloring
    {node: color in 0..m-1}; `claimed_opt` is the makespan it witnesses."""

    success: bool
    certificate: object
    claimed_opt: object
    note: str = ""

    def assignment(self, n: int) -> tuple:
        if isinstance(self.certificate, dict):
            return tuple(self.certificate[v] + 1 for v in range(1, n + 1))
        return tuple(self.certificate)


class BudgetExhausted(Exception):
    pass


class Adversary:
    name = "adversary"
    m: int = 2
    K = None  # None: scenarios (hyperedges) appear during play
    target_ratio = Fraction(1)

    def __init__(self):
        self._gen = None
        self._issued = 0
        self.stopped = None
        self.reveals = []
        self.answers = []
        self.audit = {}
        self.H = Hypergraph() if self.K is None else None
        self.phi = {}
        self.created = []  # edge ids created by the latest node reveal

    # subclasses implement play() as a generator returning a Stop
    def play(self):
        raise NotImplementedError

    def next(self, answers):
        if self.stopped is not None:
            return self.stopped
        answers = list(answers)
        if len(answers) != self._issued or answers[: len(self.answers)] != self.answers:
            raise ValueError("answers do not match the reveals issued so far")
        try:
            if self._gen is None:
                self._gen = self.play()
                out = next(self._gen)
            else:
                col = answers[-1]
                if not 1 <= col <= self.m:
                    raise ValueError(f"answer {col} outside 1..{self.m}")
                self.answers.append(col)
                if self.H is not None:
                    self.phi[self.H.n] = col
                out = self._gen.send(col)
        except StopIteration as s:
            out = s.value
        self._run_audits()
        if isinstance(out, Stop):
            self.stopped = out
            return out
        self._issue(out)
        return out

    def _issue(self, rev):
        self.reveals.append(rev)
        self._issued += 1
        if isinstance(rev, NodeReveal):
            before = self.H.m_edges
            self.H.add_node(rev.joins, rev.creates)
            self.created = list(range(before + 1, self.H.m_edges + 1))

    def certificate(self):
        if self.stopped is None:
            raise RuntimeError("play has not stopped")
        return self.stopped.certificate, self.stopped.claimed_opt

    def audits(self) -> dict:
        """name -> bool, evaluated after every answer."""
        return {}

    def _run_audits(self):
        for name, ok in self.audits().items():
            rec = self.audit.setdefault(name, [0, 0])
            rec[0] += 1
            if not ok:
                rec[1] += 1

    def audit_ok(self) -> bool:
        return all(fail == 0 for _, fail in self.audit.values())

    def instance(self) -> Instance:
        if self.H is not None:
            from .hypergraph import to_instance
            return to_instance(self.H, self.m)
        return Instance(self.m, self.K, tuple(Job(r.p, r.scenarios) for r in self.reveals))

    def __repr__(self):
        return f"<adversary {self.name}>"


def _state_of(m, K, reveals, answers) -> AssignmentState:
    st = AssignmentState(m, K)
    for r, i in zip(reveals, answers):
        st.push(r.p, r.scenarios, i)
    return st


def _opt_stop(adv: Adversary, success: bool = True, note: str = "") -> Stop:
    res = exact_opt(adv.instance())
    return Stop(success, tuple(res.witness), res.value, note)


# --- static instances --------------------------------------------------------------------

def build_I1(m: int) -> Instance:
    """Two scenarios; jobs 1 and 2 start them apart, jobs 3..m+1 lie in both."""
    if m < 2:
        raise ValueError("m >= 2 required")
    both = set(range(3, m + 2))
    return instance_from_sets(m, [1] * (m + 1), [{1} | both, {2} | both])


def build_I2(m: int) -> Instance:
    """Three scenarios; job 3 joins S1 and S3, jobs 4..m+2 join S2 and S3."""
    if m < 2:
        raise ValueError("m >= 2 required")
    tail = set(range(4, m + 3))
    return instance_from_sets(m, [1] * (m + 2), [{1, 3}, {2} | tail, {3} | tail])


def rule1_counterexample() -> Instance:
    return instance_from_sets(2, [1, 1, 2, 1, 3], [{1, 2, 4, 5}, {3, 4, 5}])


# --- job games ---------------------------------------------------------------------------

class CompositeAdversary(Adversary):
    """Unit jobs 1 in S1 and 2 in S2; the rest of I1 if they are split, of I2 otherwise."""

    K = 3
    target_ratio = Fraction(2)

    def __init__(self, m: int = 2):
        if m < 2:
            raise ValueError("m >= 2 required")
        self.m = m
        self.name = f"composite:{m}"
        super().__init__()

    def play(self):
        a = yield JobReveal(Fraction(1), frozenset({1}))
        b = yield JobReveal(Fraction(1), frozenset({2}))
        if a != b:
            for _ in range(self.m - 1):
                yield JobReveal(Fraction(1), frozenset({1, 2}))
            return _opt_stop(self, note="I1")
        yield JobReveal(Fraction(1), frozenset({1, 3}))
        for _ in range(self.m - 1):
            yield JobReveal(Fraction(1), frozenset({2, 3}))
        return _opt_stop(self, note="I2")


X53 = Weight(3, 1)
TARGET_53 = Weight(Fraction(9, 8), Fraction(1, 8))


class LB53Adversary(Adversary):
    """The two-machine, two-scenario game tree forcing (9+√17)/8."""

    name = "lb53"
    m = 2
    K = 2
    target_ratio = TARGET_53

    def play(self):
        X = X53
        S1, S2, BOTH = frozenset({1}), frozenset({2}), frozenset({1, 2})
        one = Fraction(1)
        st = AssignmentState(2, 2)

        def put(p, s, i):
            st.push(p, s, i)

        for s in (S1, S1, S2, S2):
            i = yield JobReveal(one, s)
            put(one, s, i)
            if st.ms > 1:
                return _opt_stop(self, note="unbalanced start")
        first = yield JobReveal(X, S1)
        put(X, S1, first)
        i6 = yield JobReveal(X / 2, S2)
        put(X / 2, S2, i6)
        if i6 == first:
            i7 = yield JobReveal(X, S2)
            put(X, S2, i7)
            if i7 == first:
                return _opt_stop(self, note="case (i), job 7 on the first machine")
        else:
            i7 = yield JobReveal(X / 2, BOTH)
            put(X / 2, BOTH, i7)
            if i7 == first:
                return _opt_stop(self, note="case (ii), job 7 on the first machine")
        i8 = yield JobReveal(2 + 3 * X / 2, BOTH)
        put(2 + 3 * X / 2, BOTH, i8)
        return _opt_stop(self, note="full play")


def lb53_adversary() -> LB53Adversary:
    return LB53Adversary()


# --- hypergraph games: shared plumbing -----------------------------------------------

class _Won(Exception):
    pass


class ColoringAdversary(Adversary):
    K = None

    def __init__(self, node_cap=None):
        super().__init__()
        self.node_cap = node_cap

    def _check_cap(self, extra: int = 1):
        if self.node_cap is not None and self.H.n + extra > self.node_cap:
            raise BudgetExhausted(f"node budget {self.node_cap} exhausted")

    def edge_between(self, u: int, v: int) -> int:
        for k in self.H.incident[u]:
            if self.H.edges[k - 1] == {u, v}:
                return k
        raise KeyError(f"no edge {{{u}, {v}}}")


# --- OMHC(3): gadget copies, palettes and three subinstances ---------------------

@dataclass
class PaletteRecord:
    copy: int
    C: int
    nodes: dict  # online color -> node
    offline: dict = field(default_factory=dict)

    def holds(self, off) -> bool:
        return all(off[v] != self.C for v in self.nodes.values())


@dataclass
class CopyRecord:
    index: int
    nodes: list
    cols: list
    kind: str
    colors: tuple = ()


PAIR_SETS = (frozenset({RED, BLUE}), frozenset({BLUE, YELLOW}), frozenset({YELLOW, RED}))
DESIGNATED = (YELLOW, BLUE, RED, YELLOW, BLUE, RED, YELLOW)  # palette colors after relabeling
# a wired node with reference color Y / B / R goes to palette 7 / 5 / 6
WIRING = {YELLOW: 7, BLUE: 5, RED: 6}


class OMHC3Adversary(ColoringAdversary):
    """Forces a monochromatic edge of size 3 while a proper 3-coloring exists."""

    name = "omhc3"
    m = 3
    target_ratio = Fraction(3)
    NODE_CAP = 103
    EDGE_CAP = 233

    def __init__(self, node_cap=None):
        super().__init__(node_cap if node_cap is not None else self.NODE_CAP)
        self.off = {}
        self.palettes = []
        self.copies = []
        self.phase = "copies"
        self.log = []

    # reveal helpers ------------------------------------------------------------
    def _reveal(self, creates=(), joins=(), color=None, recolor=None):
        """Reveal a node; `recolor(v)`, if given, sets offline colors after the fact."""
        self._check_cap()
        col = yield NodeReveal(tuple(joins), tuple(frozenset(c) for c in creates))
        v = self.H.n
        if recolor is not None:
            recolor(v)
        elif color is not None:
            self.off[v] = color
        else:
            used = {self.off[w] for w in self.H.neighbors(v)}
            self.off[v] = min(set(range(3)) - used)
        self._assert_proper(v)
        for k in self.H.incident[v]:
            e = self.H.edges[k - 1]
            if len(e) == 3 and len({self.phi[w] for w in e}) == 1:
                raise _Won(k)
        return v, col

    def _assert_proper(self, v):
        for k in self.H.incident[v]:
            e = self.H.edges[k - 1]
            assert len({self.off[w] for w in e}) == len(e), "maintained coloring became improper"

    def audits(self):
        out = {
            "proper": not self.off or is_proper_partial(self.H, self.off),
            "nodes<=103": self.H.n <= self.NODE_CAP,
            "edges<=233": self.H.nontrivial_edges() <= self.EDGE_CAP,
        }
        if self.phase in ("copies", "A"):
            out["palettes"] = all(p.holds(self.off) for p in self.palettes)
        return out

    def _recolor(self, nodes, pi):
        for v in nodes:
            self.off[v] = pi[self.off[v]]

    # a free copy of the gadget --------------------------------------------------
    def _copy(self):
        labs = G.ROOT
        nodes, cols = [], []
        idx = len(self.copies) + 1
        while not G.status(labs, cols):
            opt = G.choose(labs, cols)
            creates = [frozenset(nodes[p] for p in e) for e in G.new_edges(opt, len(nodes))]

            def interim(v, opt=opt):
                # any proper coloring of the revealed part until the copy's goal decides
                c = G.proper_colorings(len(nodes) + 1, G.induced(next(iter(opt))))[0]
                for p, w in enumerate(nodes + [v]):
                    self.off[w] = c[p]

            v, col = yield from self._reveal(creates, recolor=interim)
            nodes.append(v)
            cols.append(col)
            labs = opt
        edges = G.induced(next(iter(labs)))
        kind = G.status(labs, cols)
        n = len(nodes)
        if kind == "pair":
            c, _, _ = G.pair_witnesses(n, edges, cols)[0]
            rec = CopyRecord(idx, nodes, cols, kind, tuple(sorted(set(cols))))
        else:
            c, trip, avoid = G.palette_witness(n, edges, cols)
            rec = CopyRecord(idx, nodes, cols, kind)
            self.palettes.append(PaletteRecord(idx, avoid, {i: nodes[p] for i, p in trip.items()}))
        for p, w in enumerate(nodes):
            self.off[w] = c[p]
        self.copies.append(rec)
        return rec

    # the pigeonhole endgame ---------------------------------------------------------
    def endgame_plan(self, a: int, b: int):
        """Component permutations and six size-2 edges (mono a and mono b, one of each
        per color pair) making the three-node endgame work, or None."""
        comp = self.H.component_of()
        items = {}
        for k, e in enumerate(self.H.edges, 1):
            if len(e) != 2:
                continue
            cs = {self.phi[v] for v in e}
            if len(cs) == 1:
                c = cs.pop()
                if c in (a, b):
                    items.setdefault(comp[next(iter(e))], []).append((c, frozenset(self.off[v] for v in e), k))
        targets = [(c, T) for T in PAIR_SETS for c in (a, b)]
        perms = list(itertools.permutations(range(3)))
        choice, chosen = {}, {}

        def rec(i):
            if i == len(targets):
                return True
            c, T = targets[i]
            for cp, its in items.items():
                for pi in ([choice[cp]] if cp in choice else perms):
                    hit = next((k for cc, S, k in its if cc == c and frozenset(pi[x] for x in S) == T), None)
                    if hit is None:
                        continue
                    fresh = cp not in choice
                    choice[cp] = pi
                    chosen[c, T] = hit
                    if rec(i + 1):
                        return True
                    if fresh:
                        del choice[cp]
            return False

        if not rec(0):
            return None
        groups = self.H.components()
        return {"perms": {cp: choice[cp] for cp in choice}, "groups": groups, "edges": dict(chosen), "a": a, "b": b}

    def _endgame(self, plan):
        self.log.append(("endgame", self.phase))
        self.phase = "endgame"
        for cp, pi in plan["perms"].items():
            self._recolor(plan["groups"][cp], pi)
        a, b = plan["a"], plan["b"]
        third = {T: (set(range(3)) - T).pop() for T in PAIR_SETS}
        T1, T2, T3 = PAIR_SETS
        e = plan["edges"]
        x1, _ = yield from self._reveal((), (e[a, T1], e[b, T1]), third[T1])
        x2, _ = yield from self._reveal(({x1},), (e[a, T2], e[b, T2]), third[T2])
        f = self.edge_between(x1, x2)
        yield from self._reveal((), (e[a, T3], e[b, T3], f), third[T3])
        raise AssertionError("the endgame always produces a monochromatic triple")

    # the whole construction ---------------------------------------------------------
    def play(self):
        try:
            yield from self._construction()
        except _Won as w:
            self.log.append(("won", self.phase, w.args[0]))
            return Stop(True, dict(self.off), Fraction(1), f"monochromatic triple in phase {self.phase}")
        except BudgetExhausted as ex:
            return Stop(False, dict(self.off), Fraction(1), str(ex))
        raise AssertionError("construction ended without a decision")

    def _construction(self):
        # step (i): copies until seven palettes, or three two-colored copies on one pair
        two = {}
        while len(self.palettes) < 7:
            rec = yield from self._copy()
            if rec.kind == "pair":
                two.setdefault(rec.colors, []).append(rec)
                if len(two[rec.colors]) == 3:
                    plan = self.endgame_plan(*rec.colors)
                    assert plan is not None, "three two-colored copies always admit the endgame"
                    yield from self._endgame(plan)
        # step (ii): relabel offline colors so palette t avoids DESIGNATED[t]
        comps = self.H.components()
        where = self.H.component_of()
        for t, pal in enumerate(self.palettes):
            D = DESIGNATED[t]
            if pal.C != D:
                pi = {x: x for x in range(3)}
                pi[pal.C], pi[D] = D, pal.C
                self._recolor(comps[where[pal.nodes[1]]], pi)
                pal.C = D
        P = {t + 1: pal.nodes for t, pal in enumerate(self.palettes)}
        # step (iii): subinstance A
        self.phase = "A"
        wA, iA = yield from self._reveal([{P[1][i]} for i in (1, 2, 3)], (), YELLOW)
        vA = P[1][iA]
        # step (iv): subinstance B with three candidates sharing one edge
        self.phase = "B"
        wB1, c1 = yield from self._reveal([{P[2][i]} for i in (1, 2, 3)], (), BLUE)
        wB2, c2 = yield from self._reveal([{P[3][i]} for i in (1, 2, 3)] + [{wB1}], (), RED)
        tri = self.edge_between(wB1, wB2)
        wB3, c3 = yield from self._reveal([{P[4][i]} for i in (1, 2, 3)], (tri,), YELLOW)
        cand = [(wB1, c1, 2), (wB2, c2, 3), (wB3, c3, 4)]
        wB, iB, sB = next(x for x in cand if x[1] != iA)
        vB = P[sB][iB]
        # step (v): subinstance C, wired copies until the third color shows up
        self.phase = "C"
        ipp = ({1, 2, 3} - {iA, iB}).pop()
        wC = vC = None
        while wC is None:
            nodes = {}
            for lab in G.LABELS:
                # keep room for the endgame (3 nodes) or the final node
                self._check_cap(4)
                olds = [frozenset(nodes[x] for x in e if x != lab) for e in S_EDGES
                        if lab in e and all(x in nodes for x in e if x != lab)]
                s = WIRING[G.REFERENCE[lab]]
                w, col = yield from self._reveal(olds + [{P[s][i]} for i in (1, 2, 3)], (), G.REFERENCE[lab])
                nodes[lab] = w
                if col == ipp:
                    wC, vC = w, P[s][ipp]
                    break
                plan = self.endgame_plan(iA, iB)
                if plan is not None:
                    yield from self._endgame(plan)
        # step (vi): permute the three components so every v is blue and every w yellow
        self.phase = "final"
        comps = self.H.components()
        where = self.H.component_of()
        assert len({where[vA], where[vB], where[vC]}) == 3
        for v, w in ((vA, wA), (vB, wB), (vC, wC)):
            pi = {self.off[v]: BLUE, self.off[w]: YELLOW}
            pi[(set(range(3)) - set(pi)).pop()] = RED
            self._recolor(comps[where[v]], pi)
        # step (vii): one node extends the three monochromatic pairs
        edges = (self.edge_between(vA, wA), self.edge_between(vB, wB), self.edge_between(vC, wC))
        yield from self._reveal((), edges, RED)
        raise AssertionError("the final node always closes a monochromatic triple")


def is_proper_partial(H: Hypergraph, off: dict) -> bool:
    for e in H.edges:
        cs = [off[v] for v in e]
        if len(set(cs)) != len(cs):
            return False
    return True


def omhc3_adversary(node_cap=None) -> OMHC3Adversary:
    return OMHC3Adversary(node_cap)


# --- recursion sizes ---------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def x_size(m: int, d: int) -> int:
    if m < 1 or d < 1:
        raise ValueError("m, d >= 1")
    if d == 1 or m == 1:
        return 1
    a, b = x_size(m - 1, d), x_size(m, d - 1)
    return a * ((m - 1) * b + 1) + b


@functools.lru_cache(maxsize=None)
def y_size(m: int, d: int) -> int:
    if m < 1 or d < 1:
        raise ValueError("m, d >= 1")
    if m == 1:
        return 1
    if d == 1:
        return x_size(m, m)
    y1 = y_size(m - 1, d)
    return m * m * (y1 ** m + 1) * (y_size(m, d - 1) + 1) + m * y1 ** (m + 1) + 1


def n_bound(m: int) -> int:
    """Nodes sufficient to force a monochromatic edge of size m on a hyperforest."""
    if m < 2:
        raise ValueError("the bound is stated for m >= 2")
    return y_size(m, m - 1) + 1


def xsize_bound(m: int, d: int) -> int:
    """prod_{i=1}^{m+d} (m+d)^(2^i) = (m+d)^(2^(m+d+1) - 2)."""
    s = m + d
    return s ** (2 ** (s + 1) - 2)


def tower_at_least(base: int, height: int, n: int) -> bool:
    """base↑↑height >= n, evaluated lazily (stops once the tower clearly exceeds n)."""
    if height == 0:
        return n <= 1
    v = 1
    for _ in range(height):
        if v > n.bit_length() + 1 and base >= 2:
            return True
        v = base ** v
    return v >= n


@dataclass(frozen=True)
class RecursionSizes:
    m: int
    d: int

    @property
    def X(self) -> int:
        return x_size(self.m, self.d)

    @property
    def Y(self) -> int:
        return y_size(self.m, self.d)

    @property
    def N(self) -> int:
        return n_bound(self.m)


# --- general OMHC(m) on hyperforests ---------------------------------------------

class GeneralAdversary(ColoringAdversary):
    """Recursive constructions on hyperforests. Every node creates its own singleton
    edge; all other structure comes from extending active edges."""

    def __init__(self, m: int, node_cap=None):
        if m < 1:
            raise ValueError("m >= 1")
        self.m = m
        super().__init__(node_cap)
        self.active = ActiveEdgeSet()
        self.single = {}
        self.result = None
        self.events = []

    def audits(self):
        out = {"hyperforest": is_hyperforest(self.H), "active_disjoint": self.active.check(self.H)}
        if self.node_cap is not None:
            out["budget"] = self.H.n <= self.node_cap
        try:
            out["coloring"] = is_proper(self.H, forest_coloring(self.H, self.m)) if self.H.n else True
        except ValueError:
            out["coloring"] = False
        return out

    def _issue(self, rev):
        super()._issue(rev)
        # the node's own singleton edge, recorded here since a cut sub-run never resumes
        self.single[self.H.n] = self.created[-1]

    def _node(self, joins=()):
        self._check_cap()
        col = yield NodeReveal(tuple(joins), (frozenset(),))
        return self.H.n, col

    def _keep(self, e0: int, keep):
        keep = set(keep)
        for k in list(self.active):
            if k > e0 and k not in keep:
                self.active.discard(k)
        for k in keep:
            self.active.add(k)

    def _color_of_edge(self, k: int) -> int:
        return self.phi[next(iter(self.H.edges[k - 1]))]

    def _drive(self, sub, decorate, inspect):
        """Run `sub`, passing its reveals through `decorate`; `inspect` sees each answer
        before `sub` does and may cut the run short by returning a value."""
        try:
            rev = next(sub)
        except StopIteration as s:
            return "done", s.value
        while True:
            col = yield decorate(rev)
            r = inspect(col)
            if r is not None:
                sub.close()
                return "cut", r
            try:
                rev = sub.send(col)
            except StopIteration as s:
                return "done", s.value

    # property (i): ("all", {color: node}); property (ii): ("mono", edge id)
    def _I(self, m: int, d: int, colors: frozenset):
        e0 = self.H.m_edges
        if d == 1 or m == 1:
            v, col = yield from self._node()
            s = self.single[v]
            self._keep(e0, [s])
            return ("mono", s) if d == 1 else ("all", {col: v})
        X1 = x_size(m - 1, d)
        found = []
        by = {}
        for _ in range((m - 1) * X1 + 1):
            out = yield from self._I(m, d - 1, colors)
            if out[0] == "all":
                self._keep(e0, [self.single[v] for v in out[1].values()])
                return out
            e = out[1]
            found.append(e)
            by.setdefault(self._color_of_edge(e), []).append(e)
            self._keep(e0, found)
            if len(by) == len(colors):
                pick = {c: self._rep(es[0]) for c, es in by.items()}
                self._keep(e0, [self.single[v] for v in pick.values()])
                return "all", pick
        c = min(by, key=lambda x: (-len(by[x]), x))
        pool = by[c][: X1 + 1]
        self._keep(e0, pool)
        k = [0]

        def decorate(rev):
            return rev.extended(pool[k[0]])

        def inspect(col):
            e = pool[k[0]]
            if col == c:
                return e
            self.active.discard(e)
            k[0] += 1
            return None

        how, out = yield from self._drive(self._I(m - 1, d, colors - {c}), decorate, inspect)
        if how == "cut":
            self._keep(e0, [out])
            return "mono", out
        if out[0] == "mono":
            self._keep(e0, [out[1]])
            return out
        pick = dict(out[1])
        pick[c] = self._rep(pool[-1])
        self._keep(e0, [self.single[v] for v in pick.values()])
        return "all", pick

    def _rep(self, e: int) -> int:
        """A node of edge e, preferring one whose own singleton edge is still {v}."""
        nodes = sorted(self.H.edges[e - 1])
        for v in nodes:
            if len(self.H.edges[self.single[v] - 1]) == 1:
                return v
        return nodes[0]

    # property (i): ("all", {color: edge}) with d-node edges; (ii): ("mono", edge) of size m
    def _L(self, m: int, d: int, colors: frozenset):
        e0 = self.H.m_edges
        if m == 1:
            v, col = yield from self._node()
            s = self.single[v]
            self._keep(e0, [s])
            return "all", {col: s}
        if d == 1:
            out = yield from self._I(m, m, colors)
            if out[0] == "mono":
                return out
            pick = {}
            for c, v in out[1].items():
                s = self.single[v]
                assert len(self.H.edges[s - 1]) == 1, "an active node lost its singleton edge"
                pick[c] = s
            self._keep(e0, pick.values())
            return "all", pick
        y1 = y_size(m - 1, d)
        a1 = m * m * y1 ** m + 1
        a2 = m * y1 ** m + 1
        groups = []
        for _ in range(a1):
            out = yield from self._L(m, d - 1, colors)
            if out[0] == "mono":
                self._keep(e0, [out[1]])
                return out
            groups.append(out[1])
            self._keep(e0, [e for g in groups for e in g.values()])
        grown = {}
        for g in groups:
            v, col = yield from self._node([g[c] for c in sorted(g)])
            for c, e in g.items():
                if c != col:
                    self.active.discard(e)
            grown.setdefault(col, []).append(g[col])
            if len(self.H.edges[g[col] - 1]) == m:
                self._keep(e0, [g[col]])
                return "mono", g[col]
        c = min(grown, key=lambda x: (-len(grown[x]), x))
        chosen = grown[c][:a2]
        last = chosen[-1]
        pool = list(chosen[:-1])
        self._keep(e0, chosen)
        for _ in range(a2 - 1):
            if not pool:
                break
            target = [None]

            def decorate(rev):
                if not pool:
                    raise BudgetExhausted("no extendable edge left for a sub-copy")
                e = min(pool, key=lambda k: (len(self.H.edges[k - 1]), k))
                target[0] = e
                return rev.extended(e)

            def inspect(col):
                e = target[0]
                if col == c:
                    return e
                self.active.discard(e)
                pool.remove(e)
                return None

            how, out = yield from self._drive(self._L(m - 1, d, colors - {c}), decorate, inspect)
            if how == "cut":
                if len(self.H.edges[out - 1]) == m:
                    self._keep(e0, [out])
                    return "mono", out
                self.events.append(("unsuccessful", out))
                self._keep(e0, pool + [last])
                continue
            if out[0] == "all":
                pick = dict(out[1])
                pick[c] = last
                self._keep(e0, pick.values())
                return "all", pick
            # a monochromatic (m-1)-edge of a sub-copy delivers neither property here
            self.events.append(("sub-mono", out[1]))
            self._keep(e0, pool + [last])
        raise BudgetExhausted("L construction ran out of extendable edges")


class GeneralI(GeneralAdversary):
    def __init__(self, m: int, d: int, node_cap=None):
        if not 1 <= d <= m:
            # edges reach d nodes, so an m-coloring with optimum 1 needs d <= m
            raise ValueError("a standalone game needs 1 <= d <= m")
        self.d = d
        super().__init__(m, node_cap if node_cap is not None else x_size(m, d))
        self.name = f"general-I:{m},{d}"

    def play(self):
        try:
            out = yield from self._I(self.m, self.d, frozenset(range(1, self.m + 1)))
        except BudgetExhausted as ex:
            return Stop(False, forest_coloring(self.H, self.m), Fraction(1), str(ex))
        self.result = out
        return Stop(True, forest_coloring(self.H, self.m), Fraction(1), f"property {'(i)' if out[0] == 'all' else '(ii)'}")


class GeneralL(GeneralAdversary):
    def __init__(self, m: int, d: int, node_cap=None):
        if not 1 <= d <= m:
            # edges reach d nodes, so an m-coloring with optimum 1 needs d <= m
            raise ValueError("a standalone game needs 1 <= d <= m")
        self.d = d
        super().__init__(m, node_cap if node_cap is not None else y_size(m, d))
        self.name = f"general-L:{m},{d}"

    def play(self):
        try:
            out = yield from self._L(self.m, self.d, frozenset(range(1, self.m + 1)))
        except BudgetExhausted as ex:
            return Stop(False, forest_coloring(self.H, self.m), Fraction(1), str(ex))
        self.result = out
        return Stop(True, forest_coloring(self.H, self.m), Fraction(1), f"property {'(i)' if out[0] == 'all' else '(ii)'}")


class GeneralN(GeneralAdversary):
    """L(m, m-1) and one more node: a monochromatic edge of size m."""

    def __init__(self, m: int, node_cap=None):
        if m < 2:
            raise ValueError("m >= 2 required")
        super().__init__(m, node_cap if node_cap is not None else n_bound(m))
        self.name = f"general-N:{m}"
        self.target_ratio = Fraction(m)

    def play(self):
        colors = frozenset(range(1, self.m + 1))
        try:
            out = yield from self._L(self.m, self.m - 1, colors)
            if out[0] == "all":
                edges = [out[1][c] for c in sorted(out[1])]
                _, col = yield from self._node(edges)
                self._keep(0, [out[1][col]])
        except BudgetExhausted as ex:
            return Stop(False, forest_coloring(self.H, self.m), Fraction(1), str(ex))
        self.result = out
        return Stop(True, forest_coloring(self.H, self.m), Fraction(1), "monochromatic edge of size m")


def omhc_general_I(m: int, d: int, node_cap=None) -> GeneralI:
    return GeneralI(m, d, node_cap)


def omhc_general_L(m: int, d: int, node_cap=None) -> GeneralL:
    return GeneralL(m, d, node_cap)


def omhc_general_N(m: int, node_cap=None) -> GeneralN:
    return GeneralN(m, node_cap)


def composite_adversary(m: int = 2) -> CompositeAdversary:
    return CompositeAdversary(m)


DESK_NODE_CAP = 2000


def _desk(cap: int, budget):
    return budget if budget is not None else min(cap, DESK_NODE_CAP)


def get_adversary(name: str, budget=None) -> Adversary:
    """Ids: lb53, composite:<m>, omhc3, general-I:<m>,<d>, general-L:<m>,<d>, general-N:<m>.

    Without a budget the general games stop at the smaller of their proven size and
    DESK_NODE_CAP, since the proven sizes explode from m = 3 on.
    """
    head, _, arg = name.partition(":")
    nums = [int(x) for x in arg.split(",")] if arg else []
    if head == "lb53":
        return LB53Adversary()
    if head == "composite":
        return CompositeAdversary(*(nums or [2]))
    if head == "omhc3":
        return OMHC3Adversary(budget)
    if head == "general-I":
        return GeneralI(*nums, node_cap=_desk(x_size(*nums), budget))
    if head == "general-L":
        return GeneralL(*nums, node_cap=_desk(y_size(*nums), budget))
    if head == "general-N":
        return GeneralN(*nums, node_cap=_desk(n_bound(*nums), budget))
    raise KeyError(f"unknown adversary {name!r}")

"""Unit-weight instances seen as hypergraphs whose nodes are colored online.

Edges carry identities: a hyperedge that grows as nodes arrive keeps its id, and an
edge id k corresponds to scenario k of the unit instance. Node and edge ids are 1-based.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .core import Instance, Job, InvalidInstance


class Hypergraph:
    def __init__(self, n: int = 0, edges: Iterable[Iterable[int]] = ()):
        self.n = 0
        self.edges: list[set] = []
        self.incident: list[list[int]] = [[]]  # index 0 unused
        for _ in range(n):
            self._new_node()
        for e in edges:
            e = set(e)
            if not e or not all(1 <= v <= self.n for v in e):
                raise InvalidInstance(f"bad hyperedge {sorted(e)}")
            self._new_edge(e)

    def _new_node(self) -> int:
        self.n += 1
        self.incident.append([])
        return self.n

    def _new_edge(self, nodes) -> int:
        self.edges.append(set(nodes))
        k = len(self.edges)
        for v in nodes:
            self.incident[v].append(k)
        return k

    @property
    def m_edges(self) -> int:
        return len(self.edges)

    def edge(self, k: int) -> frozenset:
        return frozenset(self.edges[k - 1])

    def edge_ids(self):
        return range(1, len(self.edges) + 1)

    def nontrivial_edges(self) -> int:
        """Edges of size >= 2; singletons do not affect any objective."""
        return sum(1 for e in self.edges if len(e) >= 2)

    def add_node(self, joins: Iterable[int] = (), creates: Iterable[Iterable[int]] = ()) -> int:
        """Reveal a node that extends the edges `joins` and creates one new edge
        old ∪ {node} per entry of `creates` (an empty entry makes a singleton)."""
        joins = list(joins)
        creates = [set(c) for c in creates]
        if len(set(joins)) != len(joins):
            raise InvalidInstance("a node joins an edge at most once")
        for k in joins:
            if not 1 <= k <= len(self.edges):
                raise InvalidInstance(f"unknown edge {k}")
        for c in creates:
            if not all(1 <= v <= self.n for v in c):
                raise InvalidInstance(f"new edge refers to unknown nodes {sorted(c)}")
        v = self._new_node()
        for k in joins:
            self.edges[k - 1].add(v)
            self.incident[v].append(k)
        for c in creates:
            self._new_edge(c | {v})
        return v

    def copy(self) -> "Hypergraph":
        h = Hypergraph()
        h.n = self.n
        h.edges = [set(e) for e in self.edges]
        h.incident = [list(x) for x in self.incident]
        return h

    def neighbors(self, v: int) -> set:
        out = set()
        for k in self.incident[v]:
            out |= self.edges[k - 1]
        out.discard(v)
        return out

    def components(self) -> list[set]:
        parent = list(range(self.n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            if not e:
                continue
            it = iter(e)
            r = find(next(it))
            for v in it:
                s = find(v)
                if s != r:
                    parent[s] = r
        groups = {}
        for v in range(1, self.n + 1):
            groups.setdefault(find(v), set()).add(v)
        return list(groups.values())

    def component_of(self) -> list[int]:
        """comp[v] = index of v's connected component (comp[0] unused)."""
        comp = [0] * (self.n + 1)
        for i, g in enumerate(self.components()):
            for v in g:
                comp[v] = i
        return comp

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [sorted(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data) -> "Hypergraph":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["n"], data["edges"])

    def __eq__(self, other):
        return isinstance(other, Hypergraph) and self.n == other.n and self.edges == other.edges

    def __repr__(self):
        return f"Hypergraph(n={self.n}, edges={[sorted(e) for e in self.edges]})"


def is_hyperforest(H: Hypergraph) -> bool:
    """Acyclicity of the bipartite node-edge incidence graph, by union-find."""
    parent = list(range(H.n + 1 + len(H.edges)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k, e in enumerate(H.edges, 1):
        ek = H.n + k
        for v in e:
            a, b = find(v), find(ek)
            if a == b:
                return False
            parent[a] = b
    return True


def find_hypercycle(H: Hypergraph):
    """Brute-force search for v1 e1 v2 e2 ... vl el (l >= 2, distinct nodes and edges,
    v_t and v_{t+1} in e_t cyclically). Returns the cycle or None; tiny inputs only."""
    edges = [frozenset(e) for e in H.edges]

    def extend(path_v, path_e):
        v = path_v[-1]
        for k, e in enumerate(edges):
            if k in path_e or v not in e:
                continue
            if len(path_v) >= 2 and path_v[0] in e and path_v[0] != v:
                return path_v, path_e + [k]
            for w in e:
                if w != v and w not in path_v:
                    r = extend(path_v + [w], path_e + [k])
                    if r:
                        return r
        return None

    for start in range(1, H.n + 1):
        r = extend([start], [])
        if r:
            vs, es = r
            return [(v, es[i] + 1) for i, v in enumerate(vs)]
    return None


def _colors_of(phi, n):
    if isinstance(phi, Mapping):
        get = phi.get
    else:
        seq = list(phi)
        if len(seq) == n + 1 and seq[0] is None:
            seq = seq[1:]

        def get(v, default=None):
            return seq[v - 1] if v - 1 < len(seq) else default

    return get


def omhc_makespan(H: Hypergraph, phi) -> int:
    """max over edges and colors of the number of same-colored nodes in the edge."""
    get = _colors_of(phi, H.n)
    for v in range(1, H.n + 1):
        if get(v) is None:
            raise ValueError(f"node {v} is uncolored")
    best = 0
    for e in H.edges:
        if not e:
            continue
        counts = {}
        for v in e:
            c = get(v)
            counts[c] = counts.get(c, 0) + 1
        best = max(best, max(counts.values()))
    return best


def is_proper(H: Hypergraph, c) -> bool:
    """No hyperedge holds two nodes of equal color (makespan 1)."""
    return omhc_makespan(H, c) <= 1


def to_instance(H: Hypergraph, m: int) -> Instance:
    """Unit instance with job v in scenario k iff node v lies in edge k."""
    jobs = tuple(Job(Fraction(1), frozenset(H.incident[v])) for v in range(1, H.n + 1))
    return Instance(m, len(H.edges), jobs)


def from_instance(instance: Instance) -> Hypergraph:
    if not instance.is_unit():
        raise InvalidInstance("only unit-weight instances are hypergraphs")
    H = Hypergraph(instance.n)
    for k in range(1, instance.K + 1):
        members = instance.scenario(k)
        H.edges.append(set(members))
        for v in sorted(members):
            H.incident[v].append(k)
    for v in range(1, H.n + 1):
        H.incident[v].sort()
    return H


@dataclass
class OfflineColoring:
    """Node colors in 0..m-1 plus the component partition used for permutations."""

    colors: dict
    components: list = field(default_factory=list)

    def __getitem__(self, v):
        return self.colors[v]

    def get(self, v, default=None):
        return self.colors.get(v, default)

    def as_list(self, n: int) -> list:
        return [self.colors[v] for v in range(1, n + 1)]


def permute_component(c: OfflineColoring, component: Iterable[int], pi: Mapping) -> OfflineColoring:
    """Apply the color bijection pi on one component; other nodes keep their colors."""
    vals = set(pi.values())
    if vals != set(pi.keys()):
        raise ValueError("pi must be a bijection on color ids")
    new = dict(c.colors)
    for v in component:
        if v in new and new[v] in pi:
            new[v] = pi[new[v]]
    return OfflineColoring(new, list(c.components))


def forest_coloring(H: Hypergraph, m: int) -> dict:
    """Proper m-coloring of a hyperforest whose edges have at most m nodes.

    Walk each component from a root: every edge is entered through one colored node
    and its remaining nodes take distinct unused colors.
    """
    if not is_hyperforest(H):
        raise ValueError("not a hyperforest")
    if any(len(e) > m for e in H.edges):
        raise ValueError(f"an edge has more than {m} nodes")
    color = {}
    seen_edge = set()
    for root in range(1, H.n + 1):
        if root in color:
            continue
        color[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for k in H.incident[v]:
                if k in seen_edge:
                    continue
                seen_edge.add(k)
                e = H.edges[k - 1]
                free = [x for x in range(m) if x != color[v]]
                for w in sorted(e):
                    if w == v:
                        continue
                    color[w] = free.pop(0)
                    stack.append(w)
    return color


def solve_coloring(H: Hypergraph, m: int, fixed: Mapping | None = None, forbid: Mapping | None = None,
                   hint: Mapping | None = None, limit: int = 200000):
    """A proper m-coloring by backtracking (most constrained node first), or None.

    `fixed` pins colors, `forbid` maps a node to colors it may not take, `hint` gives
    preferred colors tried first. Gives up (None) after `limit` search steps.
    """
    fixed = dict(fixed or {})
    forbid = {v: set(s) for v, s in (forbid or {}).items()}
    hint = dict(hint or {})
    nbrs = [set()] + [H.neighbors(v) for v in range(1, H.n + 1)]
    color = {}
    for v, x in fixed.items():
        if x in forbid.get(v, ()):
            return None
        color[v] = x
    for v, x in fixed.items():
        if any(color.get(w) == x for w in nbrs[v]):
            return None
    todo = set(range(1, H.n + 1)) - set(color)
    steps = [0]

    def options(v):
        used = {color[w] for w in nbrs[v] if w in color}
        bad = forbid.get(v, set())
        opts = [x for x in range(m) if x not in used and x not in bad]
        h = hint.get(v)
        if h in opts:
            opts.remove(h)
            opts.insert(0, h)
        return opts

    def rec():
        if not todo:
            return True
        steps[0] += 1
        if steps[0] > limit:
            raise _GiveUp
        v = min(todo, key=lambda u: (len(options(u)), -len(nbrs[u]), u))
        todo.discard(v)
        for x in options(v):
            color[v] = x
            if rec():
                return True
        color.pop(v, None)
        todo.add(v)
        return False

    try:
        return dict(color) if rec() else None
    except _GiveUp:
        return None


class _GiveUp(Exception):
    pass


class ActiveEdgeSet:
    """Edges the adversary keeps extendable; they must lie in distinct components."""

    def __init__(self, ids: Iterable[int] = ()):
        self.ids = set(ids)

    def add(self, k: int):
        self.ids.add(k)

    def discard(self, k: int):
        self.ids.discard(k)

    def __contains__(self, k):
        return k in self.ids

    def __iter__(self):
        return iter(sorted(self.ids))

    def __len__(self):
        return len(self.ids)

    def check(self, H: Hypergraph) -> bool:
        comp = H.component_of()
        seen = set()
        for k in self.ids:
            e = H.edges[k - 1]
            c = comp[next(iter(e))]
            if c in seen:
                return False
            seen.add(c)
        return True


def gadget_S() -> Hypergraph:
    """The seven-node gadget: maximal edges {1,2,3}, {2,4,5}, {4,6,7}, {3,6}, {3,7}
    together with every 2-subset of the triples, 14 edges in all."""
    return Hypergraph(7, [sorted(e) for e in S_EDGES])


S_EDGES = tuple(frozenset(e) for e in (
    {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}, {2, 4}, {4, 5}, {2, 5}, {2, 4, 5},
    {4, 6}, {6, 7}, {4, 7}, {4, 6, 7}, {3, 6}, {3, 7},
))

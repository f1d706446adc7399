"""Revealing copies of the seven-node gadget against an online 3-coloring.

A copy is revealed one node at a time. Which gadget label a revealed node carries is
left open for as long as the revealed structure allows: the adversary tracks the set of
labelings consistent with the edges shown so far, so every "without loss of
generality" relabeling becomes an explicit search.

A copy stops as soon as one of these goals holds for the revealed part:

* ``mono``: an edge of size 3 with a single online color,
* ``pair``: exactly two online colors a, b, and under some proper 3-coloring there are
  size-2 edges e ⊆ J_a, e' ⊆ J_b with equal color sets,
* ``palette``: all three online colors, and under some proper 3-coloring one node per
  online color using at most two offline colors.

Every play reaches a goal within six nodes (five do not suffice); `copy_depth` checks it.
"""
from __future__ import annotations

import functools
import itertools

from .hypergraph import S_EDGES

LABELS = tuple(range(1, 8))
# offline colors: 0 red, 1 blue, 2 yellow
RED, BLUE, YELLOW = 0, 1, 2
COLOR_NAMES = ("red", "blue", "yellow")
# the reference coloring of the gadget: 3,4 red; 2,7 blue; 1,5,6 yellow
REFERENCE = {1: YELLOW, 2: BLUE, 3: RED, 4: RED, 5: YELLOW, 6: YELLOW, 7: BLUE}
# the alternative from the palette argument: 1,5 blue and 2 yellow
ALTERNATIVE = {**REFERENCE, 1: BLUE, 5: BLUE, 2: YELLOW}


def induced(labels) -> frozenset:
    """Gadget edges among the given labels, as sets of positions in `labels`."""
    pos = {lab: i for i, lab in enumerate(labels)}
    return frozenset(frozenset(pos[v] for v in e) for e in S_EDGES if all(v in pos for v in e))


@functools.lru_cache(maxsize=None)
def proper_colorings(n: int, edges: frozenset) -> tuple:
    return tuple(t for t in itertools.product(range(3), repeat=n)
                 if all(len({t[v] for v in e}) == len(e) for e in edges))


def canon(cols) -> tuple:
    seen = {}
    return tuple(seen.setdefault(c, len(seen)) for c in cols)


def mono_triple(edges, cols):
    for e in edges:
        if len(e) == 3 and len({cols[v] for v in e}) == 1:
            return e
    return None


def pair_witnesses(n, edges, cols):
    """(coloring, e, e') triples for the pair goal; empty unless exactly two colors."""
    used = sorted(set(cols))
    if len(used) != 2:
        return []
    a, b = used
    ea = [e for e in edges if len(e) == 2 and all(cols[v] == a for v in e)]
    eb = [e for e in edges if len(e) == 2 and all(cols[v] == b for v in e)]
    out = []
    for c in proper_colorings(n, edges):
        for x in ea:
            sx = {c[v] for v in x}
            for y in eb:
                if sx == {c[v] for v in y}:
                    out.append((c, x, y))
    return out


def palette_witness(n, edges, cols):
    """(coloring, nodes by online color, avoided color) or None."""
    if len(set(cols)) != 3:
        return None
    groups = {i: [v for v in range(n) if cols[v] == i] for i in sorted(set(cols))}
    for c in proper_colorings(n, edges):
        for trip in itertools.product(*groups.values()):
            offs = {c[v] for v in trip}
            if len(offs) <= 2:
                avoid = min(set(range(3)) - offs)
                return c, dict(zip(groups.keys(), trip)), avoid
    return None


@functools.lru_cache(maxsize=None)
def _status(labelings: frozenset, cols: tuple):
    n = len(cols)
    if n == 0:
        return None
    edges = induced(next(iter(labelings)))
    if mono_triple(edges, cols):
        return "mono"
    if pair_witnesses(n, edges, cols):
        return "pair"
    if palette_witness(n, edges, cols):
        return "palette"
    return None


def status(labelings, cols):
    return _status(frozenset(labelings), canon(cols))


@functools.lru_cache(maxsize=None)
def _options(labelings: frozenset, by_color: bool) -> tuple:
    """Next-node choices, grouped by what the opponent can see (and, for wired copies,
    by the reference color of the new label, which decides its wiring)."""
    groups = {}
    for lab in sorted(labelings):
        for x in LABELS:
            if x in lab:
                continue
            nl = lab + (x,)
            key = (induced(nl), REFERENCE[x] if by_color else None)
            groups.setdefault(key, set()).add(nl)
    return tuple(sorted((frozenset(v) for v in groups.values()), key=lambda s: sorted(s)))


@functools.lru_cache(maxsize=None)
def _win(labelings: frozenset, cols: tuple, depth: int, two: bool) -> bool:
    """Can the adversary force a goal within `depth` more nodes? With `two`, a third
    online color ends the copy at once, so only two colors are branched on."""
    if _status(labelings, cols):
        return True
    if depth == 0 or len(cols) == 7:
        return False
    colors = range(2) if two else range(3)
    for opt in _options(labelings, two):
        if all(_win(opt, canon(cols + (c,)), depth - 1, two) for c in colors
               if not (two and c >= 2)):
            return True
    return False


ROOT = frozenset({()})


def copy_depth(two: bool = False, cap: int = 7) -> int:
    """Least number of nodes within which every play of a copy reaches a goal."""
    for d in range(cap + 1):
        if _win(ROOT, (), d, two):
            return d
    raise AssertionError("no bound within the cap")


def choose(labelings, cols, budget: int = 7, two: bool = False) -> frozenset:
    """The next-node option that keeps a forced goal within the fewest nodes."""
    labelings = frozenset(labelings)
    cc = canon(cols)
    if two and len(set(cols)) > 2:
        raise ValueError("a third color has already appeared")
    for d in range(1, budget - len(cols) + 1):
        for opt in _options(labelings, two):
            if all(_win(opt, canon(cc + (c,)), d - 1, two) for c in (range(2) if two else range(3))
                   if c <= max(cc, default=-1) + 1):
                return opt
    # no forced goal left: fall back to the first option
    return _options(labelings, two)[0]


def new_edges(option: frozenset, n_before: int):
    """Edges of the option that contain the new node, as sets of older positions."""
    lab = next(iter(option))
    out = []
    for e in induced(lab):
        if n_before in e:
            out.append(frozenset(e - {n_before}))
    return sorted(out, key=lambda e: (len(e), sorted(e)))


def reference_color(option: frozenset):
    """Reference color of the new node if it is the same for all labelings, else None."""
    xs = {REFERENCE[lab[-1]] for lab in option}
    return xs.pop() if len(xs) == 1 else None


# ---- exhaustive statements about the full gadget ------------------------------

def split_makespan(J1) -> int:
    """Largest number of same-colored nodes in a gadget edge for the 2-split (J1, rest)."""
    best = 0
    for e in S_EDGES:
        a = len(e & J1)
        best = max(best, a, len(e) - a)
    return best


def literal_two_color_claim(J1) -> bool:
    """Proper coloring with size-2 edges e ⊆ J1, e' ⊆ rest, c(e) = c(e') = {red, blue}."""
    J1 = frozenset(J1)
    J2 = frozenset(LABELS) - J1
    e1 = [e for e in S_EDGES if len(e) == 2 and e <= J1]
    e2 = [e for e in S_EDGES if len(e) == 2 and e <= J2]
    if not e1 or not e2:
        return False
    edges = [frozenset(v - 1 for v in e) for e in S_EDGES]
    for c in proper_colorings(7, frozenset(edges)):
        for x in e1:
            if {c[v - 1] for v in x} != {RED, BLUE}:
                continue
            if any({c[v - 1] for v in y} == {RED, BLUE} for y in e2):
                return True
    return False


def two_color_splits():
    """All J1 ⊆ {1..7} with makespan at most 2 for (J1, complement)."""
    out = []
    for r in range(8):
        for J1 in itertools.combinations(LABELS, r):
            if split_makespan(frozenset(J1)) <= 2:
                out.append(frozenset(J1))
    return out


def palette_claim(split, coloring) -> bool:
    """Some online class holds two nodes of different colors under `coloring`."""
    return any(len({coloring[v] for v in part}) >= 2 for part in split)


def three_color_splits():
    for assign in itertools.product(range(3), repeat=7):
        if len(set(assign)) == 3:
            yield tuple(frozenset(v for v in LABELS if assign[v - 1] == i) for i in range(3))


def has_palette(split) -> bool:
    """One node per class with at most two colors, under REFERENCE or ALTERNATIVE."""
    for col in (REFERENCE, ALTERNATIVE):
        for trip in itertools.product(*split):
            if len({col[v] for v in trip}) <= 2:
                return True
    return False

"""Play the three-coloring adversary against a few players and summarize each game."""
import sys

from scenario_sched.adversaries import OMHC3Adversary
from scenario_sched.algorithms import get_algorithm
from scenario_sched.harness import duel

players = sys.argv[1:] or ["greedy", "first-fit", "balanced-first-fit", "fixed:1", "fixed:2"]
for name in players:
    adv = OMHC3Adversary()
    res = duel(get_algorithm(name), adv)
    edges = adv.H.nontrivial_edges()
    print(f"{name:>20}: ratio {res.ratio}, {adv.H.n} nodes, {edges} edges, "
          f"{len(adv.copies)} copies, {len(adv.palettes)} palettes, log {adv.log}")

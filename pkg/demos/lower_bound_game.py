"""Explore the two-machine lower-bound game: every answer path and its final ratio."""
from scenario_sched.adversaries import TARGET_53, LB53Adversary
from scenario_sched.harness import _play_prefix, _settle
from scenario_sched.adversaries import Stop


def walk(answers=()):
    adv, table, rev = _play_prefix(LB53Adversary, list(answers))
    if isinstance(rev, Stop):
        _, r = _settle(rev, table.st)
        print(f"{''.join(map(str, answers)):>8}  ratio {float(r):.5f}  ({rev.note})")
        return
    for i in (1, 2):
        walk(answers + (i,))


walk()
print(f"target (9+sqrt17)/8 = {float(TARGET_53):.5f}")

"""Command line: scenario-sched {run,duel,opt,minimax,gen,table,transform}.

Every subcommand prints JSON (table can also print CSV or markdown). The exit code is 1
when an invariant audit fails, 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .adversaries import get_adversary
from .algorithms import get_algorithm
from .core import Instance, num_decimal, num_to_json
from .harness import (
    duel,
    minimax_certify,
    minimax_value,
    parse_weight_mode,
    random_instance,
    run_static,
    table,
    table_csv,
    table_markdown,
    table_rows_json,
    Inconclusive,
)
from .oracle import exact_opt
from .transforms import cut_report, delete_report


def _default_seed() -> int:
    return int(os.environ.get("SCENARIO_SCHED_SEED", "0"))


def _load_instance(path: str) -> Instance:
    with (sys.stdin if path == "-" else open(path)) as fh:
        return Instance.from_json(json.load(fh))


def _alg(name: str, seed: int):
    return get_algorithm(f"fixed:{seed}" if name == "fixed" else name)


def _emit(obj):
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def cmd_run(a) -> int:
    res = run_static(_alg(a.alg, a.seed), _load_instance(a.instance))
    _emit(res.to_json())
    return 0 if res.audit_ok else 1


def cmd_duel(a) -> int:
    res = duel(_alg(a.alg, a.seed), get_adversary(a.adv, a.budget))
    _emit(res.to_json())
    return 0 if res.audit_ok else 1


def cmd_opt(a) -> int:
    res = exact_opt(_load_instance(a.instance), cap=a.cap)
    _emit({"value": num_to_json(res.value), "decimal": num_decimal(res.value), "witness": list(res.witness)})
    return 0


def cmd_minimax(a) -> int:
    probe = get_adversary(a.adv, a.budget)
    bound = probe.target_ratio

    def factory():
        return get_adversary(a.adv, a.budget)

    try:
        ok = minimax_certify(factory, probe.m, bound, depth_cap=a.depth_cap)
        value = minimax_value(factory, probe.m, depth_cap=a.depth_cap)
    except Inconclusive as ex:
        _emit({"adversary": a.adv, "result": "inconclusive", "reason": str(ex)})
        return 1
    _emit({"adversary": a.adv, "bound": num_to_json(bound), "certified": ok,
           "least_ratio": num_to_json(value), "least_ratio_decimal": num_decimal(value)})
    return 0 if ok else 1


def cmd_gen(a) -> int:
    inst = random_instance(a.m, a.K, a.n, parse_weight_mode(a.weights), a.seed, a.density)
    _emit(inst.to_json())
    return 0


def cmd_table(a) -> int:
    rows = table(a.count, a.seed)
    if a.format == "json":
        _emit(table_rows_json(rows))
    elif a.format == "csv":
        sys.stdout.write(table_csv(rows))
    else:
        print(table_markdown(rows))
    return 0


def cmd_transform(a) -> int:
    inst = _load_instance(a.instance)
    alg = _alg(a.alg, a.seed)
    rep = cut_report(inst, a.at, alg) if a.kind == "cut" else delete_report(inst, a.at, alg)
    _emit({"instance": rep.after.to_json(), "report": rep.to_json()})
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="scenario-sched", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)
    seed = _default_seed()

    r = sub.add_parser("run", help="play an algorithm on a static instance, ratio vs the exact optimum")
    r.add_argument("instance")
    r.add_argument("--alg", default="greedy")
    r.add_argument("--seed", type=int, default=seed)
    r.set_defaults(func=cmd_run)

    d = sub.add_parser("duel", help="algorithm against an adaptive adversary")
    d.add_argument("--alg", required=True)
    d.add_argument("--adv", required=True)
    d.add_argument("--budget", type=int, default=None)
    d.add_argument("--seed", type=int, default=seed)
    d.set_defaults(func=cmd_duel)

    o = sub.add_parser("opt", help="exact offline optimum")
    o.add_argument("instance")
    o.add_argument("--cap", type=int, default=16)
    o.set_defaults(func=cmd_opt)

    mm = sub.add_parser("minimax", help="check an adversary against every answer sequence")
    mm.add_argument("--adv", required=True)
    mm.add_argument("--budget", type=int, default=None)
    mm.add_argument("--depth-cap", type=int, default=64)
    mm.set_defaults(func=cmd_minimax)

    g = sub.add_parser("gen", help="random instance")
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--K", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--weights", default="unit", help="unit or rational:<max_num>/<max_den>")
    g.add_argument("--density", type=float, default=None)
    g.add_argument("--seed", type=int, default=seed)
    g.set_defaults(func=cmd_gen)

    t = sub.add_parser("table", help="desk-scale table of bounds")
    t.add_argument("--format", choices=("markdown", "csv", "json"), default="markdown")
    t.add_argument("--count", type=int, default=200)
    t.add_argument("--seed", type=int, default=seed)
    t.set_defaults(func=cmd_table)

    x = sub.add_parser("transform", help="delete or cut a job and replay")
    x.add_argument("kind", choices=("cut", "delete"))
    x.add_argument("instance")
    x.add_argument("--at", type=int, required=True)
    x.add_argument("--alg", default="alg53")
    x.add_argument("--seed", type=int, default=seed)
    x.set_defaults(func=cmd_transform)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, TypeError, OSError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

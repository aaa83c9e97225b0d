"""Command-line interface.

Subcommands: ``gen`` writes instance files for the built-in families,
``solve`` repairs a tree to meet the degree caps, ``verify`` re-checks a
solver's output, ``ratio-table`` sweeps a family and tabulates ratios, and
``oracle`` runs the brute-force ground truth on small instances.

Exit codes: 0 success, 1 verification failure, 2 infeasible bounds,
3 input/usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from ._flow import solve_optimal
from ._generators import (
    gen_kary,
    gen_path,
    gen_random,
    gen_t2,
    kary_lower_bound,
    t2_bounds,
)
from ._heuristics import algorithm1, algorithm2, performance_bound
from ._io import (
    format_flow_dump,
    format_trace,
    load_instance,
    load_tree,
    save_instance,
    save_tree,
)
from ._metric import NORMS
from ._mst import mst
from ._oracle import brute_dbst, brute_hamilton_path
from ._tree import DegreeBounds, InfeasibleBoundsError, meets_bounds, tree_weight

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_INFEASIBLE = 2
EXIT_INPUT = 3

_ALGORITHMS = ("flow", "greedy", "treedp")


def _fmt(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    if isinstance(x, float):
        return f"{x:.9g}"
    return str(x)


def _emit(doc: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        print(json.dumps(doc, default=_fmt), file=out)
    elif fmt == "csv":
        writer = csv.writer(out)
        writer.writerow(doc.keys())
        writer.writerow(_fmt(v) for v in doc.values())
    else:
        for key, value in doc.items():
            print(f"{key}: {_fmt(value)}", file=out)


def _parse_sweep(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",")]


def _solve_with(algorithm, instance, tree, bounds, root, policy):
    if algorithm == "flow":
        return solve_optimal(instance, tree, bounds, policy=policy)
    if algorithm == "greedy":
        return algorithm1(instance, tree, bounds, root=root)
    if algorithm == "treedp":
        return algorithm2(instance, tree, bounds, root=root)
    raise ValueError(f"unknown algorithm {algorithm!r}")


# ---------------------------------------------------------------------------


def cmd_gen(args) -> int:
    if args.family == "kary":
        d = args.d if args.d is not None else args.D - 1
        tree, instance = gen_kary(args.D, args.depth)
        bounds = DegreeBounds.uniform(tree.n, d)
        save_instance(args.out, instance, bounds)
        _emit(
            {
                "family": "kary",
                "D": args.D,
                "depth": args.depth,
                "d": d,
                "n": tree.n,
                "tree_weight": tree.n - 1,
                "ratio_floor": kary_lower_bound(args.D, d, args.depth),
                "out": args.out,
            },
            args.format,
        )
    elif args.family == "path":
        tree, instance, bounds = gen_path(args.edges)
        save_instance(args.out, instance, bounds)
        _emit(
            {
                "family": "path",
                "edges": args.edges,
                "n": tree.n,
                "ratio_floor": Fraction(args.edges, 2),
                "out": args.out,
            },
            args.format,
        )
    elif args.family == "t2":
        pts = gen_t2(args.n, args.k)
        instance = pts.instance(args.norm)
        bounds = DegreeBounds.uniform(pts.n_points, args.bound)
        save_instance(args.out, instance, bounds)
        doc = {"family": "t2", "n": args.n, "k": args.k, "points": pts.n_points}
        if args.n >= 2 * args.k:  # the closed forms need this premise
            forms = t2_bounds(args.n, args.k)
            doc.update(
                circle_sum=forms.circle_sum,
                path_lower=forms.path_lower,
                tree_upper=forms.tree_upper,
                ratio_floor=forms.ratio,
            )
        doc["out"] = args.out
        _emit(doc, args.format)
    else:  # random
        instance = gen_random(args.n, args.norm, args.seed)
        bounds = DegreeBounds.uniform(args.n, args.bound)
        save_instance(args.out, instance, bounds)
        _emit(
            {
                "family": "random",
                "n": args.n,
                "norm": args.norm,
                "seed": args.seed,
                "bound": args.bound,
                "out": args.out,
            },
            args.format,
        )
    return EXIT_OK


def cmd_solve(args) -> int:
    instance, bounds = load_instance(args.input)
    if bounds is None:
        print("error: instance file carries no bounds", file=sys.stderr)
        return EXIT_INPUT
    if args.check_metric:
        bad = instance.check_triangle()
        if bad:
            print(f"error: triangle inequality violated at {len(bad)} triples", file=sys.stderr)
            return EXIT_INPUT
    tree = instance.inducing_tree.copy() if instance.source == "tree" else mst(instance)
    result, report = _solve_with(args.algorithm, instance, tree, bounds, args.root, args.policy)
    if args.out:
        save_tree(args.out, result)
    if args.trace:
        with open(args.trace, "w") as fh:
            fh.write(format_trace(report.trace))
    if args.flow_dump:
        from ._flow import build_network, min_cost_flow

        flow = min_cost_flow(build_network(instance, tree, bounds))
        with open(args.flow_dump, "w") as fh:
            fh.write(format_flow_dump(flow, instance))
    _emit(report.to_dict(), args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    instance, bounds = load_instance(args.input)
    tree = load_tree(args.tree)
    failures = []
    if tree.n != instance.n:
        failures.append(f"tree has {tree.n} vertices, instance has {instance.n}")
    elif tree.num_edges() != tree.n - 1:
        failures.append(f"tree has {tree.num_edges()} edges, expected {tree.n - 1}")
    elif not tree.is_spanning_tree():
        failures.append("edges do not form a connected acyclic spanning tree")
    if not failures and bounds is not None:
        for v in range(tree.n):
            if tree.degree(v) > bounds[v]:
                failures.append(f"degree {tree.degree(v)} at vertex {v} exceeds bound {bounds[v]}")
    doc = {"input": args.input, "tree": args.tree}
    if not failures:
        weight = tree_weight(tree, instance)
        doc["weight"] = weight
        if instance.n <= 2048:
            base = tree_weight(mst(instance), instance)
            doc["mst_weight"] = base
            doc["ratio"] = (
                Fraction(weight, base)
                if base and not isinstance(weight, float) and not isinstance(base, float)
                else (weight / base if base else 1.0)
            )
        doc["meets_bounds"] = bounds is None or meets_bounds(tree, bounds)
        doc["verdict"] = "pass"
        _emit(doc, args.format)
        return EXIT_OK
    doc["verdict"] = "fail"
    doc["failures"] = "; ".join(failures)
    _emit(doc, args.format)
    return EXIT_VERIFY_FAIL


def cmd_ratio_table(args) -> int:
    algorithms = [a for a in args.algorithms.split(",") if a]
    for a in algorithms:
        if a not in _ALGORITHMS:
            print(f"error: unknown algorithm {a!r}", file=sys.stderr)
            return EXIT_INPUT
    rows = []
    sweep = _parse_sweep(args.k)
    if args.family == "kary":
        for k in sweep:
            tree, instance = gen_kary(args.D, k)
            bounds = DegreeBounds.uniform(tree.n, args.d)
            row = {
                "k": k,
                "n": tree.n,
                "tree_weight": tree.n - 1,
                "ratio_floor": kary_lower_bound(args.D, args.d, k),
                "bound": performance_bound(tree, bounds),
            }
            for a in algorithms:
                _result, report = _solve_with(a, instance, tree, bounds, 0, "min_delta")
                row[f"ratio_{a}"] = report.ratio
            rows.append(row)
    elif args.family == "t2":
        for k in sweep:
            scale = 2 * k if args.n == "2k" else int(args.n)
            forms = t2_bounds(scale, k)
            rows.append(
                {
                    "k": k,
                    "n": scale,
                    "circle_sum": forms.circle_sum,
                    "path_lower": forms.path_lower,
                    "tree_upper": forms.tree_upper,
                    "ratio_floor": forms.ratio,
                }
            )
    else:
        print(f"error: unknown family {args.family!r}", file=sys.stderr)
        return EXIT_INPUT
    _emit_table(rows, args.format)
    return EXIT_OK


def _emit_table(rows: list[dict], fmt: str) -> None:
    if not rows:
        return
    keys = list(rows[0].keys())
    if fmt == "json":
        print(json.dumps(rows, default=_fmt))
    elif fmt == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(keys)
        for row in rows:
            writer.writerow(_fmt(row[k]) for k in keys)
    else:
        widths = {k: max(len(k), max(len(_fmt(r[k])) for r in rows)) for k in keys}
        print("  ".join(k.ljust(widths[k]) for k in keys))
        for row in rows:
            print("  ".join(_fmt(row[k]).ljust(widths[k]) for k in keys))


def cmd_oracle(args) -> int:
    instance, bounds = load_instance(args.input)
    if args.task == "dbst":
        if bounds is None:
            print("error: instance file carries no bounds", file=sys.stderr)
            return EXIT_INPUT
        tree, weight = brute_dbst(instance, bounds)
        doc = {
            "task": "dbst",
            "weight": weight,
            "edges": json.dumps(sorted(tree.edges())),
        }
    else:
        path, weight = brute_hamilton_path(instance)
        doc = {"task": "hamilton", "weight": weight, "path": json.dumps(path)}
    _emit(doc, args.format)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dbst", description=__doc__)
    parser.add_argument("--format", choices=("text", "csv", "json"), default="text")
    # accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "csv", "json"), default=argparse.SUPPRESS
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate an instance file")
    gen_sub = gen.add_subparsers(dest="family", required=True)
    g = gen_sub.add_parser("kary", parents=[common], help="unit-weight complete (D-1)-ary tree")
    g.add_argument("--D", type=int, required=True, help="internal vertex degree")
    g.add_argument("--depth", type=int, required=True)
    g.add_argument("--d", type=int, default=None, help="uniform degree cap (default D-1)")
    g.add_argument("--out", required=True)
    g = gen_sub.add_parser("path", parents=[common], help="unit path with all-leaves bounds")
    g.add_argument("--edges", type=int, required=True)
    g.add_argument("--out", required=True)
    g = gen_sub.add_parser("t2", parents=[common], help="layered point set with heavy Hamilton paths")
    g.add_argument("--n", type=int, required=True, help="scale parameter (>= 2k)")
    g.add_argument("--k", type=int, required=True, help="depth parameter")
    g.add_argument("--norm", choices=NORMS, default="l2")
    g.add_argument("--bound", type=int, default=2)
    g.add_argument("--out", required=True)
    g = gen_sub.add_parser("random", parents=[common], help="seeded uniform points in the unit square")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--norm", choices=NORMS, default="l2")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--bound", type=int, default=3)
    g.add_argument("--out", required=True)

    s = sub.add_parser("solve", parents=[common], help="repair a tree to meet the degree caps")
    s.add_argument("input")
    s.add_argument("--algorithm", choices=_ALGORITHMS, default="flow")
    s.add_argument("--root", type=int, default=0)
    s.add_argument("--policy", choices=("min_delta", "first"), default="min_delta")
    s.add_argument("--out", help="write the result tree here")
    s.add_argument("--trace", help="write the adoption trace here")
    s.add_argument("--flow-dump", help="write the optimal min-cost flow here")
    s.add_argument("--check-metric", action="store_true")

    v = sub.add_parser("verify", parents=[common], help="re-check a result tree against its instance")
    v.add_argument("input")
    v.add_argument("tree")

    r = sub.add_parser("ratio-table", parents=[common], help="sweep a family and tabulate ratios")
    r.add_argument("--family", choices=("kary", "t2"), required=True)
    r.add_argument("--k", default="", help="sweep, e.g. 2..5 or 2,4,6")
    r.add_argument("--D", type=int, default=4)
    r.add_argument("--d", type=int, default=3)
    r.add_argument("--n", default="2k", help="t2 scale: an integer or '2k'")
    r.add_argument("--algorithms", default="flow,greedy,treedp")

    o = sub.add_parser("oracle", parents=[common], help="brute-force optimum on a small instance")
    o.add_argument("input")
    o.add_argument("--task", choices=("dbst", "hamilton"), default="dbst")

    return parser


_HANDLERS = {
    "gen": cmd_gen,
    "solve": cmd_solve,
    "verify": cmd_verify,
    "ratio-table": cmd_ratio_table,
    "oracle": cmd_oracle,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_INPUT
    try:
        return _HANDLERS[args.command](args)
    except InfeasibleBoundsError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (OSError, ValueError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: compute family maxima, build witnesses, run the
exact solver and reducers, classify sparse rows, and drive the acceptance
harness. One subcommand per operation; --format json|csv|plain everywhere.

Exit codes: 0 ok, 1 failed verification, 2 invalid parameters, 3 incomplete
search. MGX_THREADS overrides --threads wherever a search is involved.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from typing import Optional

from . import core
from .constructions import (
    AdmissiblePair,
    Partition,
    TuranSpec,
    balanced_sizes,
    build_iterated,
    build_turan,
    entropy_density,
    extremal_v0_set,
    is_s_dominant,
    iterated_entropy,
    pi_iterated,
    pi_max,
    product_optimal_weighting,
    sigma,
    sigma_iterated,
    x_star,
    x_star_residual,
    x_star_upper_limit,
)
from .solver import (
    SEARCH_INCOMPLETE,
    SearchBudget,
    conjecture_check,
    ex_pi_exact,
    ex_sigma_exact,
    girth_turan,
)
from .reductions import (
    AllLight,
    InLowerClass,
    cycle_reduce,
    heavy_edge_reduce,
    heavy_kset_reduce,
    heavy_triangle_reduce,
    mt_pipeline,
    step_down_reduce,
)
from .sparse import Bounds, ExactValue, classify, sparse_value, sparse_witness
from .verify import run_suite

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BAD_PARAMS = 2
EXIT_INCOMPLETE = 3

FAIL_STATUS = "FAIL"


def _flatten(obj) -> dict[str, str]:
    """Dotted-key scalar map for CSV output; ints stay full decimal."""
    out: dict[str, str] = {}

    def rec(o, key: str) -> None:
        if isinstance(o, dict):
            for k in sorted(o):
                rec(o[k], f"{key}.{k}" if key else str(k))
        elif isinstance(o, (list, tuple)):
            for i, v in enumerate(o):
                rec(v, f"{key}.{i}" if key else str(i))
        else:
            out[key] = "" if o is None else str(o)

    rec(obj, "")
    return out


def _emit(args, payload: dict, plain: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    elif args.format == "csv":
        flat = _flatten(payload)
        writer = csv.writer(sys.stdout)
        writer.writerow(list(flat))
        writer.writerow([flat[k] for k in flat])
    else:
        print(plain)


def _threads(args) -> int:
    env = os.environ.get("MGX_THREADS")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError("MGX_THREADS must be an integer") from None
    return args.threads


def _budget(args) -> SearchBudget:
    return SearchBudget(
        max_nodes=args.nodes,
        max_seconds=args.time_s,
        threads=_threads(args),
    )


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from None


# ---------------------------------------------------------------------------
# Subcommand handlers.

def cmd_sigma(args) -> int:
    spec = TuranSpec(args.r, args.d, args.a)
    value = sigma(spec, args.n)
    payload = {"r": args.r, "d": args.d, "a": args.a, "n": args.n,
               "sigma": value}
    _emit(args, payload, str(value))
    return EXIT_OK


def cmd_pi(args) -> int:
    spec = TuranSpec(args.r, args.d, args.a)
    value, part = pi_max(spec, args.n)
    payload = {"r": args.r, "d": args.d, "a": args.a, "n": args.n,
               "pi": value, "partition": list(part.sizes)}
    _emit(args, payload, str(value))
    return EXIT_OK


def cmd_xstar(args) -> int:
    x = x_star(args.r, args.a, args.d)
    payload = {
        "r": args.r, "a": args.a, "d": args.d,
        "x_star": x,
        "residual": x_star_residual(args.r, args.a, args.d),
        "upper_limit": x_star_upper_limit(args.r, args.d),
    }
    _emit(args, payload, f"{x:.6f}")
    return EXIT_OK


def cmd_entropy(args) -> int:
    value = entropy_density(TuranSpec(args.r, args.d, args.a))
    payload = {"r": args.r, "d": args.d, "a": args.a, "entropy": value}
    _emit(args, payload, f"{value:.6f}")
    return EXIT_OK


def cmd_pow(args) -> int:
    pair = AdmissiblePair(r=_int_list(args.r), a=_int_list(args.a))
    weighting = product_optimal_weighting(pair)
    payload = {
        "r": list(pair.r), "a": list(pair.a),
        "weights": list(weighting.x),
        "entropy": iterated_entropy(pair),
    }
    _emit(args, payload, " ".join(f"{w:.6f}" for w in weighting.x))
    return EXIT_OK


def cmd_construct(args) -> int:
    spec = TuranSpec(args.r, args.d, args.a)
    if args.sizes is not None:
        part = Partition(_int_list(args.sizes))
    elif args.n is not None:
        v0 = min(extremal_v0_set(spec, args.n, args.objective))
        part = Partition((v0,) + balanced_sizes(args.n - v0, spec.r - 1))
    else:
        raise ValueError("construct needs --sizes or --n")
    g = build_turan(spec, part)
    if args.out:
        core.save(args.out, g)
    payload = {
        "graph": core.to_json_obj(g),
        "partition": list(part.sizes),
        "edge_sum": core.edge_sum(g),
        "edge_product": core.edge_product(g),
    }
    _emit(args, payload, core.dumps(g))
    return EXIT_OK


def cmd_iterated(args) -> int:
    pair = AdmissiblePair(r=_int_list(args.r), a=_int_list(args.a))
    sig = sigma_iterated(pair, args.n)
    prod, part = pi_iterated(pair, args.n)
    payload = {
        "r": list(pair.r), "a": list(pair.a), "n": args.n,
        "sigma": sig, "pi": prod, "partition": list(part.sizes),
    }
    if args.out:
        core.save(args.out, build_iterated(pair, part))
    _emit(args, payload, f"sigma={sig} pi={prod}")
    return EXIT_OK


def cmd_exact(args) -> int:
    search = ex_sigma_exact if args.objective == "sum" else ex_pi_exact
    result = search(args.n, args.s, args.q, _budget(args))
    if args.emit_witness:
        core.save(args.emit_witness, result.witness)
    payload = {
        "n": args.n, "s": args.s, "q": args.q,
        "objective": args.objective,
        "optimum": result.optimum,
        "complete": result.complete,
        "nodes": result.nodes_explored,
    }
    _emit(args, payload, str(result.optimum))
    return EXIT_OK if result.complete else EXIT_INCOMPLETE


def cmd_girth(args) -> int:
    result = girth_turan(args.n, args.s, _budget(args))
    if args.emit_witness:
        core.save(args.emit_witness, result.witness)
    payload = {
        "n": args.n, "s": args.s,
        "edges": result.optimum,
        "complete": result.complete,
        "nodes": result.nodes_explored,
    }
    _emit(args, payload, str(result.optimum))
    return EXIT_OK if result.complete else EXIT_INCOMPLETE


def cmd_reduce(args) -> int:
    g = core.load(args.input)
    if args.lemma == "triangle":
        outcome = heavy_triangle_reduce(g, args.a)
    elif args.lemma == "edge":
        outcome = heavy_edge_reduce(g, args.a)
    elif args.lemma in ("heavy4", "heavy5", "heavy6"):
        outcome = heavy_kset_reduce(g, args.a, int(args.lemma[-1]),
                                    min_n=args.min_n)
    elif args.lemma == "step-down":
        if args.r is None or args.d is None or args.s is None:
            raise ValueError("--r, --d and --s are required for step-down")
        outcome = step_down_reduce(g, args.r, args.d, args.a, args.s)
    else:
        outcome = cycle_reduce(g, args.a)
    if isinstance(outcome, AllLight):
        payload: dict = {"status": "all-light"}
        plain = "all-light"
    elif isinstance(outcome, InLowerClass):
        payload = {"status": "in-lower-class", "s": outcome.s, "q": outcome.q}
        plain = f"in-lower-class s={outcome.s} q={outcome.q}"
    else:
        payload = {
            "status": "witness",
            "vertex": outcome.vertex,
            "reducer": outcome.reducer,
            "bound": outcome.bound.log_value(),
        }
        plain = (f"witness vertex={outcome.vertex} reducer={outcome.reducer} "
                 f"bound={outcome.bound.log_value():.6f}")
    _emit(args, payload, plain)
    return EXIT_OK


def cmd_peel(args) -> int:
    g = core.load(args.input)
    result = mt_pipeline(g, args.a, floor_n=args.floor_n)
    summary = {
        "reason": result.reason,
        "final_n": result.final.n,
        "removals": len(result.removals),
        "transformed": result.transformed is not None,
    }
    if args.format == "json":
        for rec in result.removals:
            print(json.dumps(rec.to_json_obj(), sort_keys=True))
        print(json.dumps(summary, sort_keys=True))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["n", "vertex", "reducer", "bound_log"])
        for rec in result.removals:
            obj = rec.to_json_obj()
            writer.writerow([obj["n"], obj["vertex"], obj["reducer"],
                             obj["bound"]])
        writer.writerow([result.final.n, "", "end:" + result.reason, ""])
    else:
        for rec in result.removals:
            print(f"removed vertex={rec.vertex} at n={rec.n_before} "
                  f"via {rec.reducer}")
        print(f"reason={result.reason} final_n={result.final.n} "
              f"transformed={result.transformed is not None}")
    if args.out and result.transformed is not None:
        core.save(args.out, result.transformed)
    return EXIT_OK


def cmd_sparse(args) -> int:
    regime = classify(args.s, args.q)
    value = sparse_value(args.n, args.s, args.q)
    payload: dict = {"n": args.n, "s": args.s, "q": args.q,
                     "regime": regime.tag}
    if isinstance(value, ExactValue):
        payload["value"] = value.value
        plain = str(value.value)
    else:
        payload["bounds"] = {
            "lower": value.lower,
            "upper": value.upper,
            "lower_note": value.lower_note,
            "upper_note": value.upper_note,
        }
        plain = f"{regime.tag} lower={value.lower} upper={value.upper}"
    if args.witness:
        core.save(args.witness, sparse_witness(args.n, args.s, args.q))
        payload["witness_path"] = args.witness
    _emit(args, payload, plain)
    return EXIT_OK


def cmd_dominance(args) -> int:
    pair = AdmissiblePair(r=_int_list(args.r), a=_int_list(args.a))
    universe = _int_list(args.universe)
    if len(universe) != 3:
        raise ValueError("--universe needs exactly max_k,max_r,max_a1")
    dominant, certificate = is_s_dominant(pair, args.s, universe)
    payload: dict = {
        "r": list(pair.r), "a": list(pair.a), "s": args.s,
        "dominant": dominant,
        "universe": list(universe),
    }
    if certificate is None:
        plain = "dominant"
        payload["beaten_by"] = None
    else:
        payload["beaten_by"] = {"r": list(certificate.r),
                                "a": list(certificate.a)}
        plain = (f"beaten by r={','.join(map(str, certificate.r))} "
                 f"a={','.join(map(str, certificate.a))}")
    _emit(args, payload, plain)
    return EXIT_OK


def cmd_conjecture(args) -> int:
    spec = TuranSpec(args.r, args.d, args.a)
    report = conjecture_check(spec, args.s, args.n, _budget(args))
    payload = {
        "r": args.r, "d": args.d, "a": args.a, "s": args.s, "n": args.n,
        "status": report.status,
        "q": report.q,
        "construction": report.construction_value,
        "partition": list(report.construction_partition.sizes),
        "search_optimum": report.search.optimum,
        "complete": report.search.complete,
    }
    _emit(args, payload, report.status)
    return EXIT_INCOMPLETE if report.status == SEARCH_INCOMPLETE else EXIT_OK


def cmd_verify(args) -> int:
    report = run_suite(
        suite=args.suite,
        time_s=args.time_s,
        threads=_threads(args),
        seed=args.seed,
        reduction_instances=args.reduction_instances,
        structure_instances=args.structure_instances,
    )
    if args.format == "json":
        print(json.dumps(report.to_json_obj(), sort_keys=True))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["id", "status", "anchor", "observed", "expected",
                         "seconds"])
        for c in report.checks:
            writer.writerow([c.check_id, c.status, c.anchor, c.observed,
                             c.expected, f"{c.seconds:.3f}"])
    else:
        for c in report.checks:
            print(f"{c.status:<14} {c.check_id:<9} {c.anchor} "
                  f"[{c.seconds:.1f}s]")
            if c.status == FAIL_STATUS:
                print(f"    observed: {c.observed}")
                print(f"    expected: {c.expected}")
        print(f"suite {report.suite}: {'PASS' if report.passed else 'FAIL'}")
    return EXIT_OK if report.passed else EXIT_FAILED


# ---------------------------------------------------------------------------
# Parser assembly.

def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "plain"),
                   default="plain")


def _add_budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threads", type=int, default=0,
                   help="0 = all cores; MGX_THREADS overrides")
    p.add_argument("--time-s", type=float, default=600.0,
                   help="search wall-clock budget in seconds")
    p.add_argument("--nodes", type=int, default=10**9,
                   help="search node budget")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mgx",
        description="Multigraph product-Turan toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sigma", help="max edge sum of the layered family")
    for flag in ("--r", "--d", "--a", "--n"):
        p.add_argument(flag, type=int, required=True)
    _add_format(p)
    p.set_defaults(func=cmd_sigma)

    p = sub.add_parser("pi", help="max edge product of the layered family")
    for flag in ("--r", "--d", "--a", "--n"):
        p.add_argument(flag, type=int, required=True)
    _add_format(p)
    p.set_defaults(func=cmd_pi)

    p = sub.add_parser("xstar", help="asymptotic optimal part-0 fraction")
    for flag in ("--r", "--a", "--d"):
        p.add_argument(flag, type=int, required=True)
    _add_format(p)
    p.set_defaults(func=cmd_xstar)

    p = sub.add_parser("entropy", help="asymptotic log-product density")
    for flag in ("--r", "--d", "--a"):
        p.add_argument(flag, type=int, required=True)
    _add_format(p)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("pow", help="product-optimal weighting of an "
                                   "iterated family")
    p.add_argument("--r", required=True, help="comma-separated layer counts")
    p.add_argument("--a", required=True,
                   help="comma-separated multiplicities, strictly decreasing")
    _add_format(p)
    p.set_defaults(func=cmd_pow)

    p = sub.add_parser("construct", help="build a family member as JSON")
    for flag in ("--r", "--d", "--a"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--sizes", help="comma-separated part sizes")
    p.add_argument("--n", type=int, help="optimize the partition at this n")
    p.add_argument("--objective", choices=("sum", "product"),
                   default="product")
    p.add_argument("--out", help="also write the graph to this path")
    _add_format(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("iterated", help="iterated-family maxima at n")
    p.add_argument("--r", required=True, help="comma-separated layer counts")
    p.add_argument("--a", required=True,
                   help="comma-separated multiplicities, strictly decreasing")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", help="write the product witness to this path")
    _add_format(p)
    p.set_defaults(func=cmd_iterated)

    p = sub.add_parser("exact", help="exact search over F(n,s,q)")
    for flag in ("--n", "--s", "--q"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--objective", choices=("sum", "product"),
                   default="product")
    p.add_argument("--emit-witness", help="write the maximizer to this path")
    _add_budget(p)
    _add_format(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("girth", help="max simple edges with no short cycle")
    for flag in ("--n", "--s"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--emit-witness", help="write the maximizer to this path")
    _add_budget(p)
    _add_format(p)
    p.set_defaults(func=cmd_girth)

    p = sub.add_parser("reduce", help="run one reduction lemma on a graph")
    p.add_argument("--in", dest="input", required=True,
                   help="graph JSON path")
    p.add_argument("--lemma", required=True,
                   choices=("triangle", "edge", "heavy4", "heavy5", "heavy6",
                            "step-down", "cycle"))
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--min-n", type=int,
                   help="override the heavy-k-set size floor")
    p.add_argument("--r", type=int, help="step-down family parameter")
    p.add_argument("--d", type=int, help="step-down family parameter")
    p.add_argument("--s", type=int, help="step-down set size")
    _add_format(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("peel", help="full descent: peel, symmetrize, "
                                    "transform or cycle-peel")
    p.add_argument("--in", dest="input", required=True,
                   help="graph JSON path")
    p.add_argument("--pipeline", choices=("mt",), default="mt")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--floor-n", type=int, default=6)
    p.add_argument("--out", help="write the transformed graph when acyclic")
    _add_format(p)
    p.set_defaults(func=cmd_peel)

    p = sub.add_parser("sparse", help="sparse-regime value or bounds")
    for flag in ("--n", "--s", "--q"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--witness", help="write a lower-bound witness")
    _add_format(p)
    p.set_defaults(func=cmd_sparse)

    p = sub.add_parser("dominance", help="is the pair s-dominant in a "
                                         "finite universe")
    p.add_argument("--r", required=True, help="comma-separated layer counts")
    p.add_argument("--a", required=True,
                   help="comma-separated multiplicities, strictly decreasing")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--universe", default="3,4,8",
                   help="max_k,max_r,max_a1 bounds of the candidate universe")
    _add_format(p)
    p.set_defaults(func=cmd_dominance)

    p = sub.add_parser("conjecture", help="exact search vs construction "
                                          "at one (spec, s, n)")
    for flag in ("--r", "--d", "--a", "--s", "--n"):
        p.add_argument(flag, type=int, required=True)
    _add_budget(p)
    _add_format(p)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("verify", help="run the acceptance harness")
    p.add_argument("--suite", default="all",
                   choices=("all", "base-cases", "turan", "sparse",
                            "entropy", "iterated"))
    p.add_argument("--time-s", type=float, default=None,
                   help="below 600 skips the stretch search")
    p.add_argument("--threads", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reduction-instances", type=int, default=10_000)
    p.add_argument("--structure-instances", type=int, default=1_000)
    _add_format(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_PARAMS


if __name__ == "__main__":
    sys.exit(main())

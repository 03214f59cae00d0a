"""Command-line frontend.

Commands: construct, resolve, bounds, verify, export, classify.
Exit codes: 0 success, 1 verification/solver failure, 2 usage or parse
error.  Randomized commands always run from an explicit seed (default 0)
and identical configurations produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import __version__
from . import bounds as bounds_mod
from . import designs, incidence, resolve

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def _report(command: str, config: dict, body: dict) -> dict:
    return {
        "tool": "designdim",
        "version": __version__,
        "command": command,
        "config": config,
        **body,
    }


def _load_design(path: str):
    try:
        with open(path, "r", encoding="ascii") as fh:
            text = fh.read()
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from None
    return designs.from_text(text)


def _design_summary(d) -> dict:
    if isinstance(d, designs.SymmetricDesign):
        return {"type": "SD", "v": d.v, "k": d.k, "lambda": d.lam}
    return {"type": "STD", "g": d.g, "k": d.k, "lambda": d.lam, "v": d.v}


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------

def _cmd_construct(args) -> int:
    name = args.constructor
    try:
        if name == "pg":
            d = designs.projective_plane(int(args.parameter))
        elif name == "hadamard-design":
            d = designs.hadamard_design(designs.hadamard_matrix(int(args.parameter)))
        elif name == "biaffine":
            d = designs.biaffine_plane(int(args.parameter))
        elif name == "hadamard-std":
            d = designs.hadamard_std(designs.hadamard_matrix(int(args.parameter)))
        else:  # file
            d = _load_design(args.parameter)
    except (designs.ConstructionError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    report = designs.validate_design(d)
    with open(args.out, "w", encoding="ascii") as fh:
        fh.write(designs.to_text(d))
    _print_json(
        _report(
            "construct",
            {"constructor": name, "parameter": args.parameter, "out": args.out},
            {
                "design": _design_summary(d),
                "valid": report.ok,
                "violations": list(report.violations),
            },
        )
    )
    return EXIT_OK if report.ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# resolve
# ---------------------------------------------------------------------------

def _resolve_bound(d) -> int | None:
    try:
        return resolve.semi_resolving_sample_size(d)
    except ValueError:
        return None


def _cmd_resolve(args) -> int:
    try:
        d = _load_design(args.design)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    config = {
        "design": args.design,
        "method": args.method,
        "target": args.target,
        "seed": args.seed,
        "retries": args.retries,
        "s": args.s,
        "budget": args.budget,
        "limit": args.limit,
        "out": args.out,
    }
    bound = _resolve_bound(d)
    try:
        if args.target in ("semi-points", "semi-blocks"):
            base = d if args.target == "semi-points" else designs.dual(d)
            trials = None
            if args.method == "exact":
                blocks = resolve.min_semi_resolving(base, budget=args.budget, limit=args.limit)
            elif args.method == "greedy":
                blocks = resolve.greedy_semi_resolving(base)
            else:
                size = args.s if args.s is not None else resolve.clamped_sample_size(base)
                sampled = resolve.randomized_semi_resolving(
                    base, s=size, seed=args.seed, max_retries=args.retries
                )
                blocks, trials = sampled.blocks, sampled.trials
            role = args.target
            indices = blocks
            ok, detail = resolve.verify_witness(d, role, indices)
            body = {
                "role": role,
                "size": len(indices),
                "bound_s": bound,
                "trials": trials,
                "verified": ok,
                "detail": detail,
                "witness": list(indices),
            }
        elif args.target == "split":
            split = resolve.split_resolving(
                d,
                method=args.method,
                s=args.s,
                seed=args.seed,
                max_retries=args.retries,
                budget=args.budget,
                limit=args.limit,
            )
            role = "split"
            indices = split.graph_vertices(d.point_count)
            ok, detail = resolve.verify_witness(d, role, indices)
            body = {
                "role": role,
                "size": split.size,
                "points": list(split.points),
                "blocks": list(split.blocks),
                "bound_total": None if bound is None else 2 * bound,
                "verified": ok,
                "detail": detail,
                "witness": list(indices),
            }
        elif args.target == "full-mdim":
            if args.method == "random":
                print("full-mdim supports methods exact and greedy only", file=sys.stderr)
                return EXIT_USAGE
            graph = incidence.incidence_graph(d)
            limit = args.limit if args.method == "exact" else 0
            result = resolve.metric_dimension(graph, limit=limit, budget=args.budget)
            role = "full"
            indices = result.landmarks
            ok, detail = resolve.verify_witness(d, role, indices)
            body = {
                "role": role,
                "mu_lower": result.lower,
                "mu_upper": result.upper,
                "optimal": result.optimal,
                "size": len(indices),
                "verified": ok,
                "detail": detail,
                "witness": list(indices),
            }
        else:
            print(f"unknown target {args.target}", file=sys.stderr)
            return EXIT_USAGE
    except (resolve.RetriesExhausted, resolve.BudgetExceeded, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(resolve.witness_to_text(role, indices))
    _print_json(_report("resolve", config, body))
    return EXIT_OK if body["verified"] else EXIT_FAIL


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------

def _chain_payload(report) -> dict:
    return {
        "v": report.v,
        "m": report.m,
        "s": report.s,
        "skipped": report.skipped,
        "E_num": report.expected.numerator,
        "E_den": report.expected.denominator,
        "E_float": float(report.expected),
        "chain_ok": (None if report.skipped else report.ok),
        "equivalence_holds": report.equivalence_holds,
        "links": [
            {
                "name": link.name,
                "lhs": link.lhs,
                "rhs": link.rhs,
                "holds": link.holds,
                "exact": link.exact,
                "margin": link.margin,
                "marginal": link.marginal,
            }
            for link in report.links
        ],
    }


def _cmd_bounds(args) -> int:
    config = {
        "v": args.v, "m": args.m, "s": args.s, "design": args.design,
        "bound_s": args.bound_s, "sweep": args.sweep, "qmax": args.qmax,
        "mc_trials": args.mc_trials, "seed": args.seed,
    }
    if args.sweep:
        if args.sweep != "pg":
            print(f"unknown sweep family {args.sweep}", file=sys.stderr)
            return EXIT_USAGE
        rows = bounds_mod.projective_plane_sweep(
            args.qmax, mc_trials=args.mc_trials, seed=args.seed
        )
        buf = io.StringIO()
        buf.write(
            f"# designdim {__version__} sweep={args.sweep} qmax={args.qmax} "
            f"mc_trials={args.mc_trials} seed={args.seed}\n"
        )
        writer = csv.DictWriter(buf, fieldnames=bounds_mod.SWEEP_COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        sys.stdout.write(buf.getvalue())
        return EXIT_OK
    try:
        if args.design:
            d = _load_design(args.design)
            rep = designs.validate_design(d)
            if not rep.ok:
                print(f"design does not validate: {rep.violations[0]}", file=sys.stderr)
                return EXIT_FAIL
            v = d.v
            m = 2 * (d.k - d.lam)
            s = args.s
            if s is None:
                if not args.bound_s:
                    print("give --s or --bound-s with --design", file=sys.stderr)
                    return EXIT_USAGE
                s = math.ceil(v * math.log(v) / (d.k - d.lam))
            expected = bounds_mod.design_expected_unresolved(d, s)
            body = {
                "design": _design_summary(d),
                "s": s,
                "E_num": expected.numerator,
                "E_den": expected.denominator,
                "E_float": float(expected),
            }
            if isinstance(d, designs.SymmetricDesign):
                body["chain"] = _chain_payload(bounds_mod.inequality_chain(v, m, s))
            else:
                upper = bounds_mod.expected_unresolved_std(d.g, d.k, d.lam, s)[1]
                body["E_upper_num"] = upper.numerator
                body["E_upper_den"] = upper.denominator
        else:
            if args.v is None or args.m is None or args.s is None:
                print("give --v, --m and --s (or --design)", file=sys.stderr)
                return EXIT_USAGE
            report = bounds_mod.inequality_chain(args.v, args.m, args.s)
            body = _chain_payload(report)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    _print_json(_report("bounds", config, body))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify / export / classify
# ---------------------------------------------------------------------------

def _is_graph_text(text: str) -> bool:
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            return line.startswith("G ")
    return False


def _cmd_verify(args) -> int:
    try:
        with open(args.design, "r", encoding="ascii") as fh:
            subject_text = fh.read()
        graph_input = _is_graph_text(subject_text)
        if graph_input:
            graph = incidence.from_edge_text(subject_text)
        else:
            d = designs.from_text(subject_text)
        with open(args.witness, "r", encoding="ascii") as fh:
            role, indices = resolve.witness_from_text(fh.read())
    except (OSError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    if graph_input:
        # no block structure available: only the distance route applies
        if role != "full":
            print(f"graph files support only role 'full', not {role!r}", file=sys.stderr)
            return EXIT_USAGE
        if any(not 0 <= u < graph.n for u in indices):
            ok, detail = False, "vertex index out of range"
        else:
            witness = resolve.resolving_witness(graph, indices)
            ok = witness is None
            detail = (
                "resolves the graph" if ok
                else f"vertices {witness} have equal distance vectors"
            )
    else:
        rep = designs.validate_design(d)
        if not rep.ok:
            print(f"design does not validate: {rep.violations[0]}", file=sys.stderr)
            return EXIT_FAIL
        ok, detail = resolve.verify_witness(d, role, indices)
    _print_json(
        _report(
            "verify",
            {"design": args.design, "witness": args.witness},
            {"role": role, "indices": list(indices), "verified": ok, "detail": detail},
        )
    )
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_export(args) -> int:
    try:
        d = _load_design(args.design)
        graph = incidence.incidence_graph(d)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    text = incidence.to_edge_text(graph)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_classify(args) -> int:
    try:
        d = _load_design(args.design)
        graph = incidence.incidence_graph(d)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    cls = incidence.classify(graph)
    array = incidence.intersection_array(graph)
    body = {
        "n": graph.n,
        "bipartite": cls.bipartite,
        "antipodal": cls.antipodal,
        "diameter": cls.diameter,
    }
    if isinstance(array, incidence.IntersectionArray):
        body["intersection_array"] = {
            "c": list(array.c), "a": list(array.a), "b": list(array.b),
        }
    else:
        body["intersection_array"] = None
    _print_json(_report("classify", {"design": args.design}, body))
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="designdim",
        description="Construct designs, build incidence graphs, and compute "
        "or verify resolving sets and probabilistic size bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a design and write it to a file")
    p.add_argument(
        "constructor",
        choices=["pg", "hadamard-design", "biaffine", "hadamard-std", "file"],
    )
    p.add_argument("parameter", help="prime power q / matrix order n / input path")
    p.add_argument("-o", "--out", required=True, help="output design file")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("resolve", help="compute a (semi/split/full) resolving set")
    p.add_argument("design", help="design file")
    p.add_argument("--method", choices=["random", "greedy", "exact"], default="exact")
    p.add_argument(
        "--target",
        choices=["semi-points", "semi-blocks", "split", "full-mdim"],
        default="semi-points",
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--retries", type=int, default=100)
    p.add_argument("--s", type=int, default=None, help="random sample size per side")
    p.add_argument("--budget", type=int, default=resolve.DEFAULT_NODE_BUDGET)
    p.add_argument("--limit", type=int, default=resolve.DEFAULT_EXACT_LIMIT)
    p.add_argument("--out", default=None, help="witness file to write")
    p.set_defaults(func=_cmd_resolve)

    p = sub.add_parser("bounds", help="expectation values and the inequality chain")
    p.add_argument("--v", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--design", default=None, help="design file instead of --v/--m")
    p.add_argument(
        "--bound-s",
        action="store_true",
        help="with --design: use s = ceil(v*ln(v)/(k-lambda))",
    )
    p.add_argument("--sweep", choices=["pg"], default=None)
    p.add_argument("--qmax", type=int, default=11)
    p.add_argument("--mc-trials", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("verify", help="recheck a witness file against a design")
    p.add_argument("design")
    p.add_argument("witness")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("export", help="write the incidence graph as an edge list")
    p.add_argument("design")
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=_cmd_export)

    p = sub.add_parser("classify", help="bipartite/antipodal/diameter of the graph")
    p.add_argument("design")
    p.set_defaults(func=_cmd_classify)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

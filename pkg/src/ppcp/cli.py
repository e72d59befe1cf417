"""Command-line interface: ``ppcp eval | solve | reduce | bench``.

Exit codes: 0 success, 1 bad input or other error, 2 infeasible, 3 an exact
solver refused an instance above its size guard.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import bench
from .approx import (
    LengthRangeError,
    approx_mac_pcenter,
    approx_partial_pcenter,
    approx_ppcp,
    tree_mac_pcenter_exact,
    tree_pcenter_exact,
)
from .evacuation import probabilistic_radius
from .exact import (
    GuardExceeded,
    Status,
    solve_mac_pcenter_exact,
    solve_partial_pcenter_exact,
    solve_pcenter_exact,
    solve_ppcp_exact,
)
from .feasibility import Reason, is_feasible, mac_decomposition
from .graph import INF, GraphError, WeightedGraph, format_length
from .instances import builtin_embedding, builtin_graph
from .io import InstanceDocument, ParseError, load, load_embedding, parse_embedding, serialize_json
from .reduction.embedding import EmbeddingError, embed_tiny_planar
from .reduction.pipeline import ReductionError, build_reduction, random_orientation, verify_reduction

EXIT_OK, EXIT_ERROR, EXIT_INFEASIBLE, EXIT_GUARD = 0, 1, 2, 3


def show(x) -> str:
    """Exact value plus a 6-significant-digit decimal."""
    if x == INF:
        return "inf"
    text = format_length(x)
    num, den = text.split("/")
    if den == "1":
        return num
    return f"{text} ({float(x):.6g})"


def _jsonable(x) -> str:
    return format_length(x)


def load_instance(name: str) -> InstanceDocument:
    g = builtin_graph(name)
    if g is not None:
        return InstanceDocument(g)
    path = Path(name)
    if not path.exists():
        raise GraphError(f"{name!r} is neither a built-in instance nor a file")
    return load(path)


def parse_vertices(g: WeightedGraph, text: str) -> list[int]:
    items = [t for t in text.replace(" ", ",").split(",") if t]
    return sorted({g.index(t) for t in items})


def _labels(g: WeightedGraph, vs) -> list[str]:
    return [g.label(v) for v in vs]


# eval -----------------------------------------------------------------------


def cmd_eval(args: argparse.Namespace) -> int:
    doc = load_instance(args.instance)
    g = doc.graph
    centers = parse_vertices(g, args.centers)
    report = probabilistic_radius(g, centers)
    budget = args.p if args.p is not None else len(centers)
    verdict = is_feasible(g, centers, budget) if g.n >= 2 else None
    witness = None
    if verdict is not None and verdict.reason is Reason.MISSED_MAC:
        mac = mac_decomposition(g).macs[verdict.missed_mac]
        witness = {
            "mac": _labels(g, sorted(mac.vertices)),
            "articulation_point": g.label(mac.articulation_point),
        }
    if args.format == "json":
        out = {
            "instance": g.name,
            "centers": _labels(g, centers),
            "scenarios": [
                {
                    "scenario": g.label(s.scenario),
                    "radius": _jsonable(s.radius),
                    "argmax": g.label(s.argmax),
                }
                for s in report.scenarios
            ],
            "probabilistic_radius": _jsonable(report.probabilistic_radius),
            "radius": _jsonable(report.radius),
            "feasible": bool(verdict) if verdict is not None else False,
            "reason": verdict.reason.value if verdict is not None else "too-few-centers",
            "uncovered": witness,
        }
        print(json.dumps(out, indent=2))
    else:
        print(f"instance  {g.name or args.instance}  (n={g.n}, m={g.m})")
        print(f"centers   {' '.join(_labels(g, centers)) or '-'}")
        print(f"{'scenario':>8}  {'radius':>16}  argmax")
        for s in report.scenarios:
            print(f"{g.label(s.scenario):>8}  {show(s.radius):>16}  {g.label(s.argmax)}")
        print(f"E(C) = {show(report.probabilistic_radius)}")
        print(f"r(C) = {show(report.radius)}")
        if verdict is not None and verdict.feasible:
            print("feasible")
        else:
            reason = verdict.reason.value if verdict is not None else "too-few-centers"
            print(f"infeasible: {reason}")
            if witness:
                print(
                    f"uncovered MAC {{{', '.join(witness['mac'])}}} "
                    f"behind articulation point {witness['articulation_point']}"
                )
    if verdict is None or not verdict.feasible:
        return EXIT_INFEASIBLE
    return EXIT_OK


# solve ----------------------------------------------------------------------


def _solve(g: WeightedGraph, args: argparse.Namespace):
    mode, problem, p = args.mode, args.problem, args.p
    targets = parse_vertices(g, args.targets) if args.targets else list(g.vertices)
    override = args.override
    if mode == "exact":
        if problem == "ppcp":
            return solve_ppcp_exact(g, p, override=override)
        if problem == "mac":
            return solve_mac_pcenter_exact(g, p, override=override)
        if problem == "pcenter":
            return solve_pcenter_exact(g, p, override=override)
        return solve_partial_pcenter_exact(g, targets, p, override=override)
    if mode == "approx":
        if problem == "ppcp":
            return approx_ppcp(g, p)
        if problem == "mac":
            return approx_mac_pcenter(g, p)
        return approx_partial_pcenter(g, targets, p)
    if problem == "pcenter":
        return tree_pcenter_exact(g, p)
    if problem in ("mac", "ppcp"):
        return tree_mac_pcenter_exact(g, p)
    raise GraphError("tree mode solves pcenter, mac or ppcp")


def cmd_solve(args: argparse.Namespace) -> int:
    doc = load_instance(args.instance)
    g = doc.graph
    if args.p is None:
        if doc.p is None:
            raise GraphError("no budget: pass -p or put p in the instance file")
        args.p = doc.p
    rep = _solve(g, args)
    infeasible = rep.status is Status.INFEASIBLE
    value = rep.value
    extra = {}
    if args.mode == "tree" and args.problem == "ppcp" and not infeasible:
        extra["radius"] = value
        value = probabilistic_radius(g, rep.solution).probabilistic_radius
    trace = getattr(rep, "trace", ())
    if args.format == "json":
        out = {
            "instance": g.name,
            "mode": args.mode,
            "problem": args.problem,
            "p": args.p,
            "status": "infeasible" if infeasible else ("approx" if args.mode == "approx" else "optimal"),
            "value": _jsonable(value),
            "solution": _labels(g, rep.solution),
        }
        if hasattr(rep, "explored"):
            out["explored"] = rep.explored
        if args.mode == "approx":
            out["certified_bound"] = _jsonable(rep.certified_bound)
            if rep.radius is not None:
                out["radius"] = _jsonable(rep.radius)
            if rep.ratio_bound is not None:
                out["ratio_bound"] = _jsonable(rep.ratio_bound)
            out["trace"] = [
                {"d": _jsonable(t.d), "accepted": t.accepted, "size": t.size, "radius": _jsonable(t.radius)}
                for t in trace
            ]
        for k, v in extra.items():
            out[k] = _jsonable(v)
        print(json.dumps(out, indent=2))
    else:
        print(f"instance  {g.name or args.instance}  (n={g.n}, m={g.m}, p={args.p})")
        print(f"mode      {args.mode} / {args.problem}")
        if infeasible:
            need = mac_decomposition(g).min_feasible_p if g.n >= 2 else 2
            print(f"infeasible: at least {need} centers are needed")
        else:
            print(f"value     {show(value)}")
            print(f"solution  {' '.join(_labels(g, rep.solution))}")
            for k, v in extra.items():
                print(f"{k:<9} {show(v)}")
            if hasattr(rep, "explored"):
                print(f"explored  {rep.explored}")
            if args.mode == "approx":
                if rep.radius is not None and args.problem == "ppcp":
                    print(f"radius    {show(rep.radius)}")
                print(f"bound     {show(rep.certified_bound)}")
                if rep.ratio_bound is not None:
                    print(f"ratio <=  {show(rep.ratio_bound)}")
                print(f"{'d':>12}  {'accepted':>8}  {'|S_d|':>5}  radius")
                for t in trace:
                    print(f"{show(t.d):>12}  {'yes' if t.accepted else 'no':>8}  {t.size:>5}  {show(t.radius)}")
    return EXIT_INFEASIBLE if infeasible else EXIT_OK


# reduce ---------------------------------------------------------------------


def _load_embedding(name: str):
    path = Path(name)
    if path.exists():
        text = path.read_text(encoding="utf-8")
        if '"ppcp-embedding"' in text:
            return parse_embedding(text)
        return embed_tiny_planar(load(path).graph)
    emb = builtin_embedding(name)
    if emb is None:
        raise GraphError(f"{name!r} is neither a built-in instance nor a file")
    return emb


def cmd_reduce(args: argparse.Namespace) -> int:
    emb = _load_embedding(args.embedding)
    orientation = random_orientation(emb.graph, args.seed) if args.seed is not None else None
    bundle = build_reduction(emb, args.q, orientation)
    report = verify_reduction(bundle, radius_profile=not args.no_profile)
    counts = {
        "V": bundle.base.n,
        "E": bundle.base.m,
        "sum_k": bundle.sum_k,
        "H_q": [bundle.h_q.n, bundle.h_q.m],
        "H_tilde": [bundle.h_tilde.n, bundle.h_tilde.m],
        "F": [bundle.f.n, bundle.f.m],
    }
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "F.json").write_text(serialize_json(InstanceDocument(bundle.f)), encoding="utf-8")
        (out / "registry.json").write_text(json.dumps(bundle.registry(), indent=2) + "\n", encoding="utf-8")
        (out / "verification.json").write_text(
            json.dumps({"counts": counts, **report.to_dict()}, indent=2) + "\n", encoding="utf-8"
        )
    if args.format == "json":
        print(json.dumps({"counts": counts, **report.to_dict()}, indent=2))
    else:
        print(f"base      |V|={counts['V']} |E|={counts['E']} sum k={counts['sum_k']} q={bundle.q}")
        print(f"H_q       |V|={bundle.h_q.n} |E|={bundle.h_q.m}")
        print(f"H~_q      |V|={bundle.h_tilde.n} |E|={bundle.h_tilde.m}")
        print(f"F         |V|={bundle.f.n} |E|={bundle.f.m}")
        for c in report.checks:
            print(f"{'ok' if c.passed else 'FAILED':>6}  {c.name}" + (f"  [{c.detail}]" if not c.passed else ""))
        if report.expected_radius is not None:
            print(f"E(D) = {show(report.expected_radius)} with |D| = {len(report.dominating_set)}")
        print("all identities hold" if report.passed else f"{len(report.failures)} checks failed")
    return EXIT_OK if report.passed else EXIT_ERROR


# bench ----------------------------------------------------------------------


def cmd_bench(args: argparse.Namespace) -> int:
    records = bench.run_suite(args.suite, args.seed, args.count, args.parallel)
    if args.format == "json":
        sys.stdout.write(bench.to_json(args.suite, args.seed, records, args.timings))
    else:
        sys.stdout.write(bench.to_csv(records, args.timings))
    s = bench.summary(records)
    print(f"{args.suite}: {s['count']} instances, max ratio {s['max_ratio']}, "
          f"{s['violations']} violations", file=sys.stderr)  # fmt: skip
    return EXIT_OK if s["violations"] == 0 else EXIT_ERROR


# parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ppcp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate a center set scenario by scenario")
    ev.add_argument("instance", help="built-in name (fig2, fig8:4, p5, grid3x3, ...) or file")
    ev.add_argument("--centers", required=True, help="comma-separated vertex labels or ids")
    ev.add_argument("-p", type=int, default=None, help="budget for the feasibility check")
    ev.add_argument("--format", choices=("table", "json"), default="table")
    ev.set_defaults(func=cmd_eval)

    so = sub.add_parser("solve", help="solve exactly, approximately, or with the tree algorithms")
    so.add_argument("instance")
    so.add_argument("-p", type=int, default=None)
    so.add_argument("--mode", choices=("exact", "approx", "tree"), default="exact")
    so.add_argument("--problem", choices=("ppcp", "mac", "pcenter", "partial"), default="ppcp")
    so.add_argument("--targets", help="target vertices for --problem partial")
    so.add_argument("--override", action="store_true", help="lift the exact solvers' size guards")
    so.add_argument("--format", choices=("table", "json"), default="table")
    so.set_defaults(func=cmd_solve)

    re_ = sub.add_parser("reduce", help="build and verify the gadget graph F")
    re_.add_argument("embedding", help="fig4, c4, a tiny built-in graph, or an embedding/instance file")
    re_.add_argument("-q", type=int, default=2)
    re_.add_argument("--seed", type=int, default=None, help="random edge orientation seed")
    re_.add_argument("--out", help="directory for F.json, registry.json and verification.json")
    re_.add_argument("--no-profile", action="store_true", help="skip the per-scenario radius check")
    re_.add_argument("--format", choices=("table", "json"), default="table")
    re_.set_defaults(func=cmd_reduce)

    be = sub.add_parser("bench", help="approximation ratios against the exact oracles")
    be.add_argument("--suite", choices=sorted(bench.SUITES), required=True)
    be.add_argument("--seed", type=int, default=0)
    be.add_argument("--count", type=int, default=200)
    be.add_argument("--format", choices=("csv", "json"), default="csv")
    be.add_argument("--parallel", type=int, default=1, help="worker processes (output unchanged)")
    be.add_argument("--timings", action="store_true", help="add wall-time columns")
    be.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GuardExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ParseError, GraphError, LengthRangeError, EmbeddingError, ReductionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

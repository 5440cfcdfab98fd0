"""Command-line surface.

Every run prints exactly one JSON report to stdout.  Exit statuses are
strict: 0 success/confirmed, 1 refuted or expectation mismatch, 2 usage
error, 3 inconclusive (search budget or sampling stall) -- a refutation is
never conflated with "gave up".  All commands are deterministic given their
flags and seeds; timing is only emitted on request so output stays
bit-identical across runs.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from random import Random

from . import bounds as bounds_mod
from . import construction, embedding, formats, otdb
from . import triangulations as tri
from .geom import LabelledPointSet, is_general_position

REPORT_SCHEMA = "planarconflict.report/1"

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


def _builtin_graph(name: str):
    if name == "k4":
        return tri.k4()
    if name == "octahedron":
        return tri.octahedron()
    return None


def _load_graph(spec: str):
    G = _builtin_graph(spec)
    if G is not None:
        return G
    return formats.read_graph(spec)


def _interval_fields(iv) -> dict:
    return {"lo": float(iv.lo), "hi": float(iv.hi)}


def _sigma_row(report) -> dict:
    return {
        "n": report.n,
        "log2_ts_bound_lo": float(report.ts_log2.lo),
        "log2_ts_bound_hi": float(report.ts_log2.hi),
        "sigma_bound": report.sigma_bound,
        "certified": report.certified,
    }


# ---------------------------------------------------------------------------
# Command handlers: each returns (outcome dict, exit status)
# ---------------------------------------------------------------------------


def cmd_bounds_sigma(args):
    report = bounds_mod.certified_sigma(args.n)
    outcome = _sigma_row(report)
    status = EXIT_OK
    if not report.certified:
        status = EXIT_INCONCLUSIVE
    elif args.expect is not None and report.sigma_bound != args.expect:
        status = EXIT_REFUTED
    return outcome, status


def cmd_bounds_verify_range(args):
    report = bounds_mod.verify_sigma_range(args.from_n, args.to_n, args.expect)
    outcome = {
        "expected": args.expect,
        "from": args.from_n,
        "to": args.to_n,
        "ok": report.ok,
        "mismatches": report.mismatches,
        "rows": [_sigma_row(r) for r in report.rows],
    }
    return outcome, EXIT_OK if report.ok else EXIT_REFUTED


def cmd_bounds_trend(args):
    ns = [int(tok) for tok in args.ns.replace(",", " ").split()]
    rows = bounds_mod.asymptotic_trend(ns)
    outcome = {
        "rows": [
            {
                "n": r.n,
                "sigma_bound": r.sigma_bound,
                "ratio_lo": float(r.ratio.lo),
                "ratio_hi": float(r.ratio.hi),
                "certified": r.certified,
            }
            for r in rows
        ]
    }
    ok = all(r.certified for r in rows)
    return outcome, EXIT_OK if ok else EXIT_INCONCLUSIVE


def cmd_tn_count(args):
    return {"n": args.n, "count": tri.count_stacked(args.n)}, EXIT_OK


def cmd_tn_enumerate(args):
    stream = tri.enumerate_stacked(args.n, override_guard=args.override_guard)
    count = formats.write_graph_stream(args.out, stream)
    return {"n": args.n, "count": count, "out": str(args.out)}, EXIT_OK


def cmd_tn_sample(args):
    T = tri.sample_stacked(args.n, args.seed)
    return {"n": args.n, "seed": args.seed, "graph": formats.graph_record(T)}, EXIT_OK


def cmd_embed_check(args):
    G = _load_graph(args.graph)
    P = formats.read_point_set(args.points)
    n, _ = embedding.graph_data(G)
    if args.placement:
        placement = tuple(int(tok) for tok in args.placement.split())
    else:
        placement = embedding.identity_placement(n)
    ok = embedding.is_straight_line_embedding(G, P, placement)
    if ok and args.svg:
        Path(args.svg).write_text(
            formats.svg_drawing(G, P, placement), encoding="utf-8"
        )
    outcome = {
        "embeds": ok,
        "label_preserving": placement == embedding.identity_placement(n),
    }
    status = EXIT_OK
    if args.expect is not None and ok != (args.expect == "true"):
        status = EXIT_REFUTED
    return outcome, status


def cmd_embed_search(args):
    G = _load_graph(args.graph)
    P = formats.read_point_set(args.points)
    verdict = embedding.embeds_on(G, P, budget=args.budget)
    if verdict.unknown:
        return {"result": "unknown", "budget": args.budget}, EXIT_INCONCLUSIVE
    outcome = {
        "result": "embeds" if verdict.embeds else "does-not-embed",
        "witness": list(verdict.witness) if verdict.witness else None,
    }
    if verdict.embeds and args.svg:
        Path(args.svg).write_text(
            formats.svg_drawing(G, P, verdict.witness), encoding="utf-8"
        )
    status = EXIT_OK
    if args.expect is not None and verdict.embeds != (args.expect == "true"):
        status = EXIT_REFUTED
    return outcome, status


def cmd_embed_reconstruct(args):
    P = formats.read_point_set(args.points)
    T = embedding.reconstruct_stacked(P)
    if T is None:
        return {"result": "absent"}, EXIT_OK
    return {"result": "found", "graph": formats.graph_record(T)}, EXIT_OK


def cmd_construct_size(args):
    size = construction.collection_size(args.n, override_small=args.override_small)
    return {"n": args.n, "size": size}, EXIT_OK


def cmd_construct_member(args):
    T = construction.conflict_collection_member(
        args.n, args.index, override_small=args.override_small
    )
    record = formats.graph_record(T)
    if args.out:
        formats.write_graph(args.out, T)
        return {"n": args.n, "index": args.index, "out": str(args.out)}, EXIT_OK
    return {"n": args.n, "index": args.index, "graph": record}, EXIT_OK


def cmd_construct_range(args):
    stream = construction.iter_members(
        args.n, args.from_idx, args.to_idx + 1, override_small=args.override_small
    )
    count = formats.write_graph_stream(args.out, stream)
    return {
        "n": args.n,
        "from": args.from_idx,
        "to": args.to_idx,
        "count": count,
        "out": str(args.out),
    }, EXIT_OK


def cmd_construct_validate(args):
    rng = Random(args.seed)
    upper = min(
        construction.collection_size(args.n, override_small=args.override_small),
        construction.count_compositions(args.n),
    )
    failures = []
    indices = [rng.randrange(upper) for _ in range(args.sample)]
    for idx in indices:
        T = construction.conflict_collection_member(
            args.n, idx, override_small=args.override_small
        )
        try:
            T.validate()
            if not construction.contains_labelled_octahedron(T):
                raise ValueError("octahedron subgraph on labels 1..6 damaged")
        except ValueError as exc:
            failures.append({"index": idx, "error": str(exc)})
    outcome = {
        "n": args.n,
        "sampled": args.sample,
        "indices": indices,
        "failures": failures,
    }
    return outcome, EXIT_OK if not failures else EXIT_REFUTED


def _representative_stream(source: str, n: int):
    if source.startswith("otdb:"):
        cfg = otdb.OtdbConfig(db_dir=source[len("otdb:"):], allow_fallback=False)
    elif source.startswith("fallback:"):
        cfg = otdb.OtdbConfig(db_dir=None, seed=int(source[len("fallback:"):]))
    else:
        raise ValueError(f"source must be otdb:PATH or fallback:SEED, got {source!r}")
    return otdb.representatives(n, cfg)


def cmd_verify_conflict(args):
    graph_dir = Path(args.graphs)
    files = sorted(graph_dir.glob("*.json"))
    if not files:
        raise ValueError(f"no graph records (*.json) found in {graph_dir}")
    graphs = [formats.read_graph(f) for f in files]
    reps = _representative_stream(args.source, args.n)
    verdict = embedding.verify_conflict_collection(
        graphs, args.n, reps, budget=args.budget
    )
    outcome = {
        "n": args.n,
        "graphs": len(graphs),
        "source": reps.source,
        "representatives_checked": verdict.representatives_checked,
        "undecided": verdict.undecided,
    }
    if verdict.is_conflict is True:
        outcome["result"] = "conflict-confirmed"
        return outcome, EXIT_OK
    if verdict.is_conflict is False:
        outcome["result"] = "refuted"
        outcome["counterexample"] = formats.dump_point_set(verdict.counterexample)
        return outcome, EXIT_REFUTED
    outcome["result"] = "inconclusive"
    return outcome, EXIT_INCONCLUSIVE


def cmd_experiment_embed_prob(args):
    n = args.n
    rng = Random(args.seed)
    total = tri.count_stacked(n)
    lp_bound = Fraction(1, total)
    embed_bound = Fraction(16 * n * (n - 1) * (n - 2), 2**n)
    max_lp = 0
    fractions = []
    violations = 0
    for _ in range(args.trials):
        while True:
            coords = set()
            while len(coords) < n:
                coords.add((rng.randrange(otdb.GRID), rng.randrange(otdb.GRID)))
            P = LabelledPointSet(sorted(coords))
            if is_general_position(P):
                break
        counts = embedding.exact_embedding_counts(n, P)
        max_lp = max(max_lp, counts.label_preserving_count)
        fractions.append(Fraction(counts.embeddable_count, counts.total))
        if Fraction(counts.label_preserving_count, counts.total) > lp_bound:
            violations += 1
        if fractions[-1] > min(Fraction(1), embed_bound):
            violations += 1
    mean_fraction = sum(fractions, Fraction(0)) / len(fractions)
    outcome = {
        "n": n,
        "trials": args.trials,
        "family_size": total,
        "max_label_preserving_count": max_lp,
        "label_preserving_bound": float(lp_bound),
        "mean_embeddable_fraction": float(mean_fraction),
        "embeddable_fraction_bound": float(embed_bound),
        "embeddable_bound_vacuous": embed_bound > 1,
        "violations": violations,
    }
    return outcome, EXIT_OK if violations == 0 else EXIT_REFUTED


def cmd_otdb_probe(args):
    candidates = otdb.probe_format(args.file)
    outcome = {
        "file": str(args.file),
        "candidates": [{"n": n, "coord_width": w} for n, w in candidates],
    }
    return outcome, EXIT_OK


def cmd_otdb_convert(args):
    records = otdb.read_order_type_file(args.file, args.n, args.width)
    wanted = None
    for idx, rec in enumerate(records):
        if idx == args.index:
            wanted = rec
            break
    if wanted is None:
        raise ValueError(f"record {args.index} beyond end of file")
    formats.write_point_set(args.out, wanted.points)
    return {"file": str(args.file), "index": args.index, "out": str(args.out)}, EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="planarconflict",
        description="Order types, stacked triangulations, straight-line "
        "embeddability, and certified conflict-collection bounds.",
    )
    parser.add_argument(
        "--timing", action="store_true", help="include elapsed seconds in the report"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="certified size-bound pipeline")
    bsub = p.add_subparsers(dest="subcommand", required=True)
    ps = bsub.add_parser("sigma", help="certified bound for one n")
    ps.add_argument("--n", type=int, required=True)
    ps.add_argument("--expect", type=int)
    ps.set_defaults(func=cmd_bounds_sigma)
    pv = bsub.add_parser("verify-range", help="certify an n-range against an expectation")
    pv.add_argument("--from", dest="from_n", type=int, required=True)
    pv.add_argument("--to", dest="to_n", type=int, required=True)
    pv.add_argument("--expect", type=int, required=True)
    pv.set_defaults(func=cmd_bounds_verify_range)
    pt = bsub.add_parser("trend", help="bound / log2(n) table")
    pt.add_argument("--ns", type=str, required=True, help="comma or space separated")
    pt.set_defaults(func=cmd_bounds_trend)

    p = sub.add_parser("tn", help="the stacked triangulation family")
    tsub = p.add_subparsers(dest="subcommand", required=True)
    pc = tsub.add_parser("count")
    pc.add_argument("--n", type=int, required=True)
    pc.set_defaults(func=cmd_tn_count)
    pe = tsub.add_parser("enumerate")
    pe.add_argument("--n", type=int, required=True)
    pe.add_argument("--out", type=str, required=True)
    pe.add_argument("--override-guard", action="store_true")
    pe.set_defaults(func=cmd_tn_enumerate)
    pp = tsub.add_parser("sample")
    pp.add_argument("--n", type=int, required=True)
    pp.add_argument("--seed", type=int, required=True)
    pp.set_defaults(func=cmd_tn_sample)

    p = sub.add_parser("embed", help="straight-line embeddability")
    esub = p.add_subparsers(dest="subcommand", required=True)
    pc = esub.add_parser("check", help="check one placement (identity by default)")
    pc.add_argument("--graph", type=str, required=True, help="path, 'k4', or 'octahedron'")
    pc.add_argument("--points", type=str, required=True)
    pc.add_argument("--placement", type=str, help="space-separated point labels")
    pc.add_argument("--label-preserving", action="store_true", dest="label_preserving",
                    help="synonym for the default identity placement")
    pc.add_argument("--svg", type=str)
    pc.add_argument("--expect", choices=("true", "false"))
    pc.set_defaults(func=cmd_embed_check)
    pf = esub.add_parser("search", help="search all placements within a budget")
    pf.add_argument("--graph", type=str, required=True)
    pf.add_argument("--points", type=str, required=True)
    pf.add_argument("--budget", type=int, default=embedding.DEFAULT_BUDGET)
    pf.add_argument("--svg", type=str)
    pf.add_argument("--expect", choices=("true", "false"))
    pf.set_defaults(func=cmd_embed_search)
    pr = esub.add_parser("reconstruct", help="unique stacked member fitting the labels")
    pr.add_argument("--points", type=str, required=True)
    pr.set_defaults(func=cmd_embed_reconstruct)

    p = sub.add_parser("construct", help="explicit octahedron-based collection")
    csub = p.add_subparsers(dest="subcommand", required=True)
    pz = csub.add_parser("size")
    pz.add_argument("--n", type=int, required=True)
    pz.add_argument("--override-small", action="store_true")
    pz.set_defaults(func=cmd_construct_size)
    pm = csub.add_parser("member")
    pm.add_argument("--n", type=int, required=True)
    pm.add_argument("--index", type=int, required=True)
    pm.add_argument("--override-small", action="store_true")
    pm.add_argument("--out", type=str)
    pm.set_defaults(func=cmd_construct_member)
    pg = csub.add_parser("range")
    pg.add_argument("--n", type=int, required=True)
    pg.add_argument("--from", dest="from_idx", type=int, required=True)
    pg.add_argument("--to", dest="to_idx", type=int, required=True)
    pg.add_argument("--out", type=str, required=True)
    pg.add_argument("--override-small", action="store_true")
    pg.set_defaults(func=cmd_construct_range)
    pv = csub.add_parser("validate")
    pv.add_argument("--n", type=int, required=True)
    pv.add_argument("--sample", type=int, required=True)
    pv.add_argument("--seed", type=int, required=True)
    pv.add_argument("--override-small", action="store_true")
    pv.set_defaults(func=cmd_construct_validate)

    p = sub.add_parser("verify-conflict", help="check a collection against representatives")
    p.add_argument("--graphs", type=str, required=True, help="directory of *.json records")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--source", type=str, required=True, help="otdb:PATH or fallback:SEED")
    p.add_argument("--budget", type=int, default=embedding.DEFAULT_BUDGET)
    p.set_defaults(func=cmd_verify_conflict)

    p = sub.add_parser("experiment", help="exact probability experiments")
    xsub = p.add_subparsers(dest="subcommand", required=True)
    px = xsub.add_parser("embed-prob")
    px.add_argument("--n", type=int, required=True)
    px.add_argument("--trials", type=int, required=True)
    px.add_argument("--seed", type=int, required=True)
    px.set_defaults(func=cmd_experiment_embed_prob)

    p = sub.add_parser("otdb", help="order-type database utilities")
    osub = p.add_subparsers(dest="subcommand", required=True)
    pb = osub.add_parser("probe", help="infer (n, width) candidates from file size")
    pb.add_argument("--file", type=str, required=True)
    pb.set_defaults(func=cmd_otdb_probe)
    pk = osub.add_parser("convert", help="extract one record as point-set text")
    pk.add_argument("--file", type=str, required=True)
    pk.add_argument("--n", type=int, required=True)
    pk.add_argument("--width", type=int, choices=(8, 16), required=True)
    pk.add_argument("--index", type=int, required=True)
    pk.add_argument("--out", type=str, required=True)
    pk.set_defaults(func=cmd_otdb_convert)

    return parser


def _echo_inputs(args) -> dict:
    skip = {"func", "command", "subcommand", "timing"}
    return {k: v for k, v in vars(args).items() if k not in skip}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    command = args.command + (
        f" {args.subcommand}" if getattr(args, "subcommand", None) else ""
    )
    report = {
        "schema": REPORT_SCHEMA,
        "command": command,
        "inputs": _echo_inputs(args),
    }
    start = time.monotonic()
    try:
        outcome, status = args.func(args)
    except (ValueError, OSError, otdb.IncompleteEnumeration,
            bounds_mod.FloorUncertified) as exc:
        if isinstance(exc, otdb.IncompleteEnumeration):
            status = EXIT_INCONCLUSIVE
        elif isinstance(exc, bounds_mod.FloorUncertified):
            status = EXIT_INCONCLUSIVE
        else:
            status = EXIT_USAGE
        report["error"] = str(exc)
        if args.timing:
            report["elapsed_s"] = round(time.monotonic() - start, 3)
        print(json.dumps(report, sort_keys=True))
        return status
    report["outcome"] = outcome
    if args.timing:
        report["elapsed_s"] = round(time.monotonic() - start, 3)
    print(json.dumps(report, sort_keys=True))
    return status


if __name__ == "__main__":
    sys.exit(main())

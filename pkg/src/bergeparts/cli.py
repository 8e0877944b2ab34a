"""Command-line entry point binding constructions, verification, bounds,
statement checkers, and exact search.

Exit codes: 0 success/verified, 1 violation or bound gap found (still a
valid run), 2 usage or I/O error.  JSON reports are deterministic: fixed key
order and no timestamps, so identical invocations produce identical bytes.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import __version__
from .berge import (
    BergeEmbedding,
    FreenessReport,
    PatternGraph,
    Witness,
    partition_is_g_free,
)
from .bounds import BoundsReport, known_bounds
from .constructors import (
    claw_partition_6,
    claw_partition_9,
    exceptional_partition_5,
    modular_packing_partition,
    quad_partition,
)
from .errors import ToolkitError
from .lemma_checkers import (
    CheckReport,
    Exhaustive,
    Sample,
    check_c4_claim,
    check_even_c4_lemma,
    check_odd_c4_lemma,
    check_triangle_lemma,
)
from .search import CensusResult, SearchConfig, census_optimal, exact_f
from .setcore import (
    Family,
    GroundSet,
    Partition,
    elements_of,
    partition_from_json,
    partition_from_text,
    partition_to_json,
    partition_to_text,
    validate_partition,
)

EXIT_OK = 0
EXIT_FINDING = 1
EXIT_USAGE = 2


def _embedding_obj(emb: BergeEmbedding) -> dict:
    return {
        "vertices": {str(v): e for v, e in emb.vertex_map},
        "edges": [
            {"edge": list(edge), "set": list(elements_of(mask))}
            for edge, mask in emb.edge_map
        ],
    }


def _witness_obj(w: Witness) -> dict:
    return {
        "sets": [list(elements_of(m)) for m in w.sets],
        "embedding": _embedding_obj(w.embedding),
    }


def _freeness_obj(rep: FreenessReport) -> dict:
    out: dict[str, Any] = {
        "pattern": rep.pattern.describe(),
        "free": rep.free,
        "parts_checked": len(rep.per_part),
    }
    if rep.witness_part is not None:
        out["witness_part"] = rep.witness_part
        out["witness"] = _witness_obj(rep.per_part[rep.witness_part])
    return out


def _bounds_obj(rep: BoundsReport) -> dict:
    return {
        "lower": rep.lower,
        "upper": rep.upper,
        "exact": rep.exact,
        "provenance": [
            {"kind": p.kind, "label": p.label, "value": p.value}
            for p in rep.provenance
        ],
    }


def _check_obj(rep: CheckReport) -> dict:
    mode: dict[str, Any] = (
        {"kind": "exhaustive"}
        if isinstance(rep.mode, Exhaustive)
        else {"kind": "sample", "count": rep.mode.count, "seed": rep.mode.seed}
    )
    return {
        "n": rep.n,
        "statement": rep.statement,
        "mode": mode,
        "tuples_checked": rep.tuples_checked,
        "violation_count": rep.violation_count,
        "violations": [
            [list(elements_of(m)) for m in tup] for tup in rep.violations
        ],
    }


def _emit(report: dict, fmt: str, render_text) -> None:
    if fmt == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        render_text(report)


def _write_partition(p: Partition, path: str, fmt: str) -> None:
    data = partition_to_json(p) if fmt == "json" else partition_to_text(p)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(data)


def _read_partition(path: str) -> Partition:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return partition_from_json(text)
    return partition_from_text(text)


def _header(args: argparse.Namespace) -> dict:
    resolved = {
        k: v for k, v in sorted(vars(args).items()) if k != "func" and v is not None
    }
    return {"tool": "bergeparts", "version": __version__, "command": resolved}


# --------------------------------------------------------------------------
# Subcommands


def _cmd_construct(args: argparse.Namespace) -> int:
    if args.what in ("quad", "modular") and args.n is None:
        raise ToolkitError(f"construct {args.what} requires --n")
    if args.what == "modular" and args.k is None:
        raise ToolkitError("construct modular requires --k")
    if args.what == "quad":
        partition = quad_partition(GroundSet(args.n))
        stats_obj = None
    elif args.what == "modular":
        partition, stats = modular_packing_partition(GroundSet(args.n), args.k)
        stats_obj = {
            "full_parts": stats.full_parts,
            "leftover_sets": stats.leftover_sets,
            "leftover_parts": stats.leftover_parts,
            "total_parts": stats.total_parts,
            "ratio": stats.ratio,
            "residues": [list(x) for x in stats.residues],
        }
    elif args.what == "exceptional5":
        partition = exceptional_partition_5()
        stats_obj = None
    elif args.what == "claw6":
        partition = claw_partition_6()
        stats_obj = None
    else:
        partition = claw_partition_9()
        stats_obj = None

    validation = validate_partition(partition)
    result: dict[str, Any] = {
        "construction": args.what,
        "n": partition.ground.n,
        "family": partition.family.value,
        "parts": len(partition.parts),
        "valid": validation.ok,
    }
    if stats_obj is not None:
        result["stats"] = stats_obj
    status = EXIT_OK if validation.ok else EXIT_FINDING
    if args.verify:
        pattern = PatternGraph.parse(args.verify)
        freeness = partition_is_g_free(partition, pattern)
        result["freeness"] = _freeness_obj(freeness)
        if not freeness.free:
            status = EXIT_FINDING
    result["status"] = "ok" if status == EXIT_OK else "violation"
    if args.output:
        _write_partition(partition, args.output, args.format)
        result["output"] = args.output

    def render(rep: dict) -> None:
        r = rep["result"]
        print(f"{r['construction']}: n={r['n']} parts={r['parts']} valid={r['valid']}")
        if "stats" in r:
            s = r["stats"]
            print(
                f"  full={s['full_parts']} leftover_sets={s['leftover_sets']} "
                f"total={s['total_parts']} ratio={s['ratio']:.4f}"
            )
        if "freeness" in r:
            print(f"  {r['freeness']['pattern']}-free: {r['freeness']['free']}")

    _emit({"header": _header(args), "result": result}, args.report_format, render)
    return status


def _cmd_verify(args: argparse.Namespace) -> int:
    partition = _read_partition(args.file)
    pattern = PatternGraph.parse(args.pattern)
    validation = validate_partition(partition)
    result: dict[str, Any] = {
        "file": args.file,
        "n": partition.ground.n,
        "family": partition.family.value,
        "parts": len(partition.parts),
        "valid": validation.ok,
    }
    if not validation.ok:
        result["violations"] = [
            {"kind": v.kind, "set": list(elements_of(v.mask)), "part": v.part_index}
            for v in validation.violations[:50]
        ]
        result["status"] = "invalid"
        status = EXIT_FINDING
    else:
        freeness = partition_is_g_free(partition, pattern)
        result["freeness"] = _freeness_obj(freeness)
        result["status"] = "free" if freeness.free else "violation"
        status = EXIT_OK if freeness.free else EXIT_FINDING

    def render(rep: dict) -> None:
        r = rep["result"]
        print(f"{r['file']}: parts={r['parts']} valid={r['valid']} -> {r['status']}")

    _emit({"header": _header(args), "result": result}, args.report_format, render)
    return status


def _cmd_bounds(args: argparse.Namespace) -> int:
    pattern = PatternGraph.parse(args.pattern)
    rep = known_bounds(
        args.n, pattern, measure_construction=args.measure_construction
    )
    result = _bounds_obj(rep)
    result["n"] = args.n
    result["pattern"] = pattern.describe()
    gap = rep.exact is None and rep.lower < rep.upper
    result["status"] = "gap" if gap else "exact"

    def render(out: dict) -> None:
        r = out["result"]
        print(
            f"f({r['n']}, {r['pattern']}): lower={r['lower']} upper={r['upper']}"
            + (f" exact={r['exact']}" if r["exact"] is not None else "")
        )
        for p in r["provenance"]:
            print(f"  [{p['kind']}] {p['label']}: {p['value']}")

    _emit({"header": _header(args), "result": result}, args.report_format, render)
    return EXIT_FINDING if gap else EXIT_OK


def _mode_from_args(args: argparse.Namespace):
    if args.exhaustive:
        return Exhaustive()
    if args.samples is None:
        raise ToolkitError("choose --exhaustive or --samples S --seed X")
    return Sample(count=args.samples, seed=args.seed)


def _cmd_lemma(args: argparse.Namespace) -> int:
    mode = _mode_from_args(args)
    if args.statement == "triangle":
        reports = list(check_triangle_lemma(args.n, mode))
    elif args.statement == "c4claim":
        reports = [check_c4_claim(args.n, mode)]
    elif args.statement == "c4even":
        reports = list(check_even_c4_lemma(args.n, mode))
    else:
        reports = [check_odd_c4_lemma(args.n, mode)]
    total = sum(r.violation_count for r in reports)
    result = {
        "check": args.statement,
        "n": args.n,
        "reports": [_check_obj(r) for r in reports],
        "total_violations": total,
        "status": "ok" if total == 0 else "violations",
    }

    def render(out: dict) -> None:
        for r in out["result"]["reports"]:
            print(
                f"{r['statement']}: checked={r['tuples_checked']} "
                f"violations={r['violation_count']}"
            )

    _emit({"header": _header(args), "result": result}, args.report_format, render)
    return EXIT_OK if total == 0 else EXIT_FINDING


def _cmd_search(args: argparse.Namespace) -> int:
    pattern = PatternGraph.parse(args.pattern)
    family = Family.POWER_SET if args.family == "full" else Family.POWER_SET_STAR
    cfg = SearchConfig(
        n=args.n,
        pattern=pattern,
        family=family,
        node_budget=args.budget,
        prove_unique=args.prove_unique,
    )
    result: dict[str, Any]
    if args.prove_unique:
        census: CensusResult = census_optimal(cfg)
        result = {
            "n": args.n,
            "pattern": pattern.describe(),
            "value": census.value,
            "census": census.count,
            "complete": census.complete,
            "nodes_expanded": census.nodes_expanded,
        }
        status = EXIT_OK if census.complete else EXIT_FINDING
    else:
        res = exact_f(cfg)
        result = {
            "n": args.n,
            "pattern": pattern.describe(),
            "value": res.value,
            "lower": res.lower,
            "upper": res.upper,
            "nodes_expanded": res.nodes_expanded,
            "complete": res.complete,
        }
        if res.witness is not None:
            ok = validate_partition(res.witness).ok
            free = partition_is_g_free(res.witness, pattern).free
            result["witness_valid"] = ok and free
            if args.output:
                _write_partition(res.witness, args.output, args.format)
                result["output"] = args.output
        status = EXIT_OK if res.complete else EXIT_FINDING
    result["status"] = "complete" if status == EXIT_OK else "incomplete"

    def render(out: dict) -> None:
        r = out["result"]
        line = f"f({r['n']}, {r['pattern']})"
        if r.get("value") is not None:
            line += f" = {r['value']}"
        else:
            line += f" >= {r.get('lower')}"
        if "census" in r:
            line += f" (distinct optima: {r['census']})"
        print(line + f"  [{r['status']}]")

    _emit({"header": _header(args), "result": result}, args.report_format, render)
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bergeparts",
        description=(
            "Partition power sets into Berge-pattern-free classes: "
            "constructions, verification, bounds, statement checks, search."
        ),
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=0,
        help="worker cap for parallel-friendly checks (0 = all cores); "
        "current implementations are single-process and deterministic",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--format",
            choices=("json", "text"),
            default="json",
            help="partition file format for -o",
        )
        p.add_argument(
            "--report-format",
            dest="report_format",
            choices=("json", "text"),
            default="json",
            help="stdout report format",
        )
        p.add_argument("-o", "--output", help="write the partition to this file")

    c = sub.add_parser("construct", help="build one of the known partitions")
    c.add_argument(
        "what", choices=("quad", "modular", "exceptional5", "claw6", "claw9")
    )
    c.add_argument("--n", type=int, default=None)
    c.add_argument("--k", type=int, default=None)
    c.add_argument("--verify", help="pattern to verify freeness against")
    add_common(c)
    c.set_defaults(func=_cmd_construct)

    v = sub.add_parser("verify", help="validate a partition file and check freeness")
    v.add_argument("file")
    v.add_argument("--pattern", required=True)
    add_common(v)
    v.set_defaults(func=_cmd_verify)

    b = sub.add_parser("bounds", help="certified bounds for (n, pattern)")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--pattern", required=True)
    b.add_argument(
        "--measure-construction",
        action="store_true",
        help="also build the modular packing and report its part count",
    )
    add_common(b)
    b.set_defaults(func=_cmd_bounds)

    l = sub.add_parser("lemma", help="brute-force or sampled statement checks")
    l.add_argument("statement", choices=("triangle", "c4claim", "c4even", "c4odd"))
    l.add_argument("--n", type=int, required=True)
    l.add_argument("--exhaustive", action="store_true")
    l.add_argument("--samples", type=int, default=None)
    l.add_argument("--seed", type=int, default=1)
    add_common(l)
    l.set_defaults(func=_cmd_lemma)

    s = sub.add_parser("search", help="exact minimum class count by search")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--pattern", required=True)
    s.add_argument("--family", choices=("star", "full"), default="star")
    s.add_argument("--budget", type=int, default=200_000_000)
    s.add_argument("--prove-unique", action="store_true")
    add_common(s)
    s.set_defaults(func=_cmd_search)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ToolkitError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

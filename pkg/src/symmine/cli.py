"""``symmine`` command-line front end.

Exit codes: 0 ok, 1 I/O error, 2 bad input, 3 count overflow.  In text mode
stdout carries only the answer; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .engine import (CountOverflowError, PlanError, compile_plan, count, motif_counts, motif_name)
from .graph import GraphFormatError, orient_reindex, read_edge_list, write_edge_list
from .oracle import OracleGuardError, brute_force_induced_count, brute_force_mapping_count
from .pattern import PatternError, automorphisms, mask_to_bitstring, canonical_mask, resolve_pattern
from .perfmodel import CostModelParams, rank_schedules, restriction_probabilities, select_schedule
from .schedules import generate_valid_recursive

log = logging.getLogger("symmine")

EXIT_IO, EXIT_INPUT, EXIT_OVERFLOW = 1, 2, 3


def _default_threads() -> int:
    env = os.environ.get("SYMMINE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            log.warning("ignoring non-integer SYMMINE_THREADS=%r", env)
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


def _letter(label: int) -> str:
    return chr(ord("A") + label)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _params(args) -> CostModelParams:
    return CostModelParams(args.n_model, args.d_model)


def _choose(p, args):
    """Selected candidate, or the ``--schedule-index`` one in explorer order."""
    if getattr(args, "schedule_index", None) is None:
        return select_schedule(p, _params(args))
    ranked = rank_schedules(p, _params(args))
    if not 0 <= args.schedule_index < len(ranked):
        raise PlanError(f"--schedule-index {args.schedule_index} outside 0..{len(ranked) - 1}")
    return ranked[args.schedule_index]


def _plan(p, args):
    choice = _choose(p, args)
    return compile_plan(p, choice.schedule, choice.restrictions,
                        use_restrictions=not args.no_restrictions, use_bounds=not args.no_bounds)


def cmd_compile(args) -> int:
    p = resolve_pattern(args.pattern)
    plan = _plan(p, args)
    if args.json:
        print(plan.to_json(indent=None))
    else:
        print(plan.pseudocode())
        print()
        print(plan.to_json())
    return 0


def cmd_schedules(args) -> int:
    p = resolve_pattern(args.pattern)
    aut = automorphisms(p)
    ranked = rank_schedules(p, _params(args), aut)
    rows = []
    for i, c in enumerate(ranked):
        probs = restriction_probabilities(c.schedule, c.order, exact=True)
        rows.append({
            "index": i,
            "schedule": list(c.schedule),
            "relations": [list(r) for r in c.order.sorted_relations()],
            "parents": list(c.restrictions.parent),
            "z": [z for z, _ in probs],
            "cum_prob": str(probs[-1][1]),
            "cost": c.cost.total,
        })
    payload = {"multiplicity": len(aut), "distinct": len(ranked), "schedules": rows}
    lines = [f"multiplicity {len(aut)}", f"distinct {len(ranked)}"]
    if args.all_valid:
        valid = len(generate_valid_recursive(p))
        payload["valid"] = valid
        lines.append(f"valid {valid}")
    for row in rows:
        sched = "".join(_letter(v) for v in row["schedule"])
        rel = ",".join(_letter(a) + ">" + _letter(b) for a, b in row["relations"]) or "-"
        parents = ",".join("-" if z is None else _letter(row["schedule"][z]) for z in row["parents"])
        z = ",".join(map(str, row["z"]))
        lines.append(f"[{row['index']}] {sched} relations={rel} parents={parents} z={z} "
                     f"cum_prob={row['cum_prob']} cost={row['cost']:.6g}")
    _emit(args, payload, "\n".join(lines))
    return 0


def _load_graph(args):
    g = read_edge_list(args.graph)
    if g.stats.duplicates or g.stats.self_loops:
        log.info("dropped %d duplicate edges and %d self-loops", g.stats.duplicates, g.stats.self_loops)
    return g


def cmd_count(args) -> int:
    p = resolve_pattern(args.pattern)
    g = _load_graph(args)
    if args.orient:
        g, _ = orient_reindex(g)
    plan = _plan(p, args)
    res = count(g, plan, args.threads)
    _emit(args, {"count": res.count, "wall_ms": round(res.wall_time * 1000, 3),
                 "schedule": list(plan.schedule), "workers": args.threads}, str(res.count))
    return 0


def cmd_motifs(args) -> int:
    if not 3 <= args.size <= 5:
        raise ValueError("--size must be in 3..5")
    g = _load_graph(args)
    if args.orient:
        g, _ = orient_reindex(g)
    counts = motif_counts(g, args.size, _params(args), args.threads, use_bounds=not args.no_bounds)
    rows = [{"bitstring": mask_to_bitstring(canonical_mask(p), p.n), "name": motif_name(p), "count": c}
            for p, c in counts.items()]
    total = sum(counts.values())
    text = "\n".join(f"{r['bitstring']} {r['name'] or '-'} {r['count']}" for r in rows)
    _emit(args, {"size": args.size, "motifs": rows, "total": total}, f"{text}\ntotal {total}")
    return 0


def cmd_orient(args) -> int:
    g = _load_graph(args)
    og, _ = orient_reindex(g)
    write_edge_list(og, args.out)
    log.info("wrote %d vertices, %d edges to %s", og.n, og.edge_count, args.out)
    return 0


def cmd_oracle(args) -> int:
    p = resolve_pattern(args.pattern)
    g = _load_graph(args)
    induced = brute_force_induced_count(g, p)
    labeled = brute_force_mapping_count(g, p)
    _emit(args, {"induced": induced, "labeled": labeled, "multiplicity": len(automorphisms(p))},
          f"induced {induced}\nlabeled {labeled}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symmine", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, graph=False, pattern=False, plan=False, model=False, threads=False):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if graph:
            sp.add_argument("--graph", required=True, help="edge-list file")
        if pattern:
            sp.add_argument("--pattern", required=True, help="name, name:k, or pattern file")
        if plan:
            sp.add_argument("--no-restrictions", action="store_true")
            sp.add_argument("--no-bounds", action="store_true")
            sp.add_argument("--schedule-index", type=int, default=None,
                            help="use this distinct schedule instead of the model's pick")
        if model:
            sp.add_argument("--n-model", type=int, default=1000)
            sp.add_argument("--d-model", type=float, default=5.0)
        if threads:
            sp.add_argument("--threads", type=int, default=_default_threads())
            sp.add_argument("--orient", action="store_true", help="degree-orient the graph first")

    sp = sub.add_parser("compile", help="print the loop nest and plan JSON")
    common(sp, pattern=True, plan=True, model=True)
    sp.set_defaults(func=cmd_compile)

    sp = sub.add_parser("schedules", help="list distinct schedules with restrictions and costs")
    common(sp, pattern=True, model=True)
    sp.add_argument("--all-valid", action="store_true", help="also report the valid-schedule count")
    sp.set_defaults(func=cmd_schedules)

    sp = sub.add_parser("count", help="count induced instances of a pattern")
    common(sp, graph=True, pattern=True, plan=True, model=True, threads=True)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("motifs", help="count every connected pattern of a given size")
    common(sp, graph=True, model=True, threads=True)
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--no-bounds", action="store_true")
    sp.set_defaults(func=cmd_motifs)

    sp = sub.add_parser("orient", help="write the degree-reindexed edge list")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_orient, json=False)

    sp = sub.add_parser("oracle", help="brute-force induced and labeled counts")
    common(sp, graph=True, pattern=True)
    sp.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="symmine: %(message)s", stream=sys.stderr)
    if getattr(args, "threads", 1) < 1:
        print("symmine: --threads must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except CountOverflowError as exc:
        print(f"symmine: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except (PatternError, GraphFormatError, PlanError, OracleGuardError, ValueError) as exc:
        print(f"symmine: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"symmine: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

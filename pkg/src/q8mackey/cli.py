"""Command-line front end.

Exit codes: 0 pass, 1 mismatch, 2 usage, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import itertools
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from .builders import Grading
from .cache import CACHE_ENV, ResultCache
from .cworacle import DEFAULT_CELL_BUDGET, BudgetExceeded
from .records import ENGINES, MODES, CoefficientRecord, compute_record, dumps_json, render_markdown

EXIT_PASS, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

_RANGE = re.compile(r"^\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?$")
RANGE_FLAGS = ("--k", "--l", "--m", "--n", "--q")


def parse_range(text: str) -> range:
    """``a..b`` (inclusive) or a single integer."""
    match = _RANGE.match(text)
    if not match:
        raise argparse.ArgumentTypeError(f"expected an integer or a range a..b, got {text!r}")
    lo = int(match.group(1))
    hi = int(match.group(2)) if match.group(2) is not None else lo
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _glue_negative_ranges(argv: Sequence[str]) -> list[str]:
    """Let ``--m -2..2`` through; argparse would read ``-2..2`` as a flag."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in RANGE_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            else:
                out.append(f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="q8mackey", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="coefficient table over a box of gradings")
    for flag in RANGE_FLAGS:
        t.add_argument(flag, type=parse_range, default=range(0, 1), metavar="A..B")
    t.add_argument("--mode", choices=(*MODES, "both"), default="homology")
    t.add_argument("--engine", choices=ENGINES, default="theorem")
    t.add_argument("--format", choices=("json", "markdown"), default="json")
    t.add_argument("--output", "-o", type=Path)
    t.add_argument("--jobs", "-j", type=_positive, default=1)
    t.add_argument("--budget", type=_positive, default=DEFAULT_CELL_BUDGET,
                   help="cell budget for the cellular engine")
    t.add_argument("--no-cache", action="store_true")
    t.add_argument("--cache-dir", type=Path, help=f"overrides ${CACHE_ENV}")
    t.add_argument("--stats", action="store_true", help="print cache counters to stderr")

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("suite", choices=("lemma", "props", "theorems", "oracle", "all"))
    v.add_argument("--n-max", type=_positive)
    v.add_argument("--m-max", type=_positive)
    v.add_argument("--k-max", type=int)
    v.add_argument("--budget", type=_positive, default=DEFAULT_CELL_BUDGET)
    v.add_argument("--report", type=Path, help="write the JSON report here")
    v.add_argument("--format", choices=("text", "json"), default="text")

    c = sub.add_parser("cache", help="inspect or clear the result cache")
    c.add_argument("--cache-dir", type=Path, help=f"overrides ${CACHE_ENV}")
    c.add_argument("--stats", action="store_true", help="entry count, size and stale versions")
    c.add_argument("--verify", action="store_true", help="check every entry, evicting corrupt ones")
    c.add_argument("--prune", action="store_true", help="delete entries from other engine versions")
    c.add_argument("--clear", action="store_true", help="delete every entry")
    return p


# ------------------------------------------------------------ table

def _cache_key(g: Grading, mode: str, engine: str, budget: int) -> dict:
    key = {"grading": [g.k, g.l, g.m, g.n, g.q], "mode": mode, "engine": engine}
    if engine == "cellular":
        key["budget"] = budget
    return key


def _evaluate(job: tuple[Grading, str, str, int]) -> dict:
    g, mode, engine, budget = job
    return compute_record(g, mode, engine, budget).to_json()


def cmd_table(args) -> int:
    modes = MODES if args.mode == "both" else (args.mode,)
    jobs = [(Grading(k, l, m, n, q), mode, args.engine, args.budget)
            for k, l, m, n, q in itertools.product(args.k, args.l, args.m, args.n, args.q)
            for mode in modes]
    cache = None if args.no_cache else ResultCache(args.cache_dir)
    results: dict[int, dict] = {}
    todo = []
    for i, job in enumerate(jobs):
        hit = cache.get(_cache_key(*job)) if cache else None
        if hit is not None:
            results[i] = hit
        else:
            todo.append(i)
    try:
        if args.jobs > 1 and len(todo) > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                computed = list(pool.map(_evaluate, [jobs[i] for i in todo], chunksize=8))
        else:
            computed = [_evaluate(jobs[i]) for i in todo]
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    for i, rec in zip(todo, computed):
        results[i] = rec
        if cache:
            cache.put(_cache_key(*jobs[i]), rec)
    records = [CoefficientRecord.from_json(results[i]) for i in range(len(jobs))]
    text = dumps_json(records) if args.format == "json" else render_markdown(records)
    if args.output:
        args.output.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.stats and cache:
        print(json.dumps(cache.stats.to_json(), sort_keys=True), file=sys.stderr)
    if cache and cache.stats.evicted:
        print(f"evicted {len(cache.stats.evicted)} corrupt cache entries", file=sys.stderr)
    return EXIT_PASS


# ------------------------------------------------------------ verify

def cmd_verify(args) -> int:
    from .verify import SUITES, run_suite

    suites = SUITES if args.suite == "all" else (args.suite,)
    report = {"suites": {}, "pass": True}
    try:
        for name in suites:
            checks = run_suite(name, n_max=args.n_max, m_max=args.m_max, k_max=args.k_max, budget=args.budget)
            report["suites"][name] = [c.to_json() for c in checks]
            for c in checks:
                report["pass"] &= c.passed
                if args.format == "text":
                    print(c.summary())
                    for note in c.notes:
                        print(f"    {note}")
    except BudgetExceeded as exc:
        report["pass"] = False
        report["budget_exceeded"] = str(exc)
        print(f"budget exceeded: {exc}", file=sys.stderr)
        _write_report(args, report)
        return EXIT_BUDGET
    _write_report(args, report)
    return EXIT_PASS if report["pass"] else EXIT_MISMATCH


def _write_report(args, report: dict) -> None:
    text = json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if args.report:
        args.report.write_text(text, encoding="utf-8")
    elif args.format == "json":
        sys.stdout.write(text)


# ------------------------------------------------------------ cache

def cmd_cache(args) -> int:
    cache = ResultCache(args.cache_dir)
    out: dict = {}
    if args.verify:
        out["verify"] = cache.scan()
    if args.prune:
        out["pruned_versions"] = cache.prune_stale()
    if args.clear:
        out["cleared"] = cache.clear()
    if args.stats or not out:
        out["stats"] = cache.summary()
    print(json.dumps(out, sort_keys=True, indent=2))
    return EXIT_PASS


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_negative_ranges(argv))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    handler = {"table": cmd_table, "verify": cmd_verify, "cache": cmd_cache}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())

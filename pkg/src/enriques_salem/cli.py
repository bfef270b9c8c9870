"""Command-line entry point.

Exit codes: 0 on success, 2 on a flag or input error, 3 when a search or growth
budget ran out (partial results are still printed).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction
from typing import Sequence

from .cache import ReportCache
from .config import GrowthConfig, RunConfig, SearchConfig
from .dynamics import DEFAULT_BUDGET, Family, GrowthResult, SalemReport, SearchSummary, analyze, get_family
from .involutions import InvolutionError
from .kernel import RatVector, format_poly

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3

REPORT_COLUMNS = ("word", "family", "classification", "salem_degree", "salem", "lambda", "char_poly")


class UsageError(ValueError):
    pass


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, no whitespace."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------


def _report_row(rep: SalemReport) -> dict:
    sf = rep.salem_factor
    return {
        "word": " ".join(map(str, rep.word)),
        "family": rep.family,
        "classification": rep.classification.report_label,
        "salem_degree": rep.salem_degree if sf is not None else 0,
        "salem": format_poly(sf) if sf is not None else "",
        "lambda": rep.display,
        "char_poly": format_poly(rep.char_poly),
    }


def _csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _text_table(rows: Sequence[dict], columns: Sequence[str]) -> str:
    cells = [[str(c) for c in columns]] + [[str(r[c]) for c in columns] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(columns))]
    lines = ["  ".join(v.ljust(widths[i]) for i, v in enumerate(row)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def render_reports(reports: Sequence[SalemReport], fmt: str, prefix: dict | None = None) -> str:
    if fmt == "json":
        return "".join(dumps(r.to_dict()) + "\n" for r in reports)
    rows = [_report_row(r) for r in reports]
    cols = list(REPORT_COLUMNS)
    if prefix:
        for key, values in prefix.items():
            for row, v in zip(rows, values):
                row[key] = v
        cols = list(prefix) + cols
    if fmt == "csv":
        return _csv(rows, cols)
    return _text_table(rows, cols)


def render_summary(summary: SearchSummary, fmt: str, include_reports: bool) -> str:
    if fmt == "json":
        return dumps(summary.to_dict(include_reports)) + "\n"
    degrees = sorted(summary.minima)
    reports = [summary.minima[d] for d in degrees]
    extra = {"degree": [str(d) for d in degrees], "tied_words": [str(len(summary.ties[d])) for d in degrees]}
    out = render_reports(reports, fmt, extra)
    if fmt == "text":
        out += (
            f"family {summary.family}: {summary.words_examined} words, "
            f"{summary.dedup_classes} classes, {len(summary.anomalies)} anomalies"
            + (", budget exhausted" if summary.budget_exhausted else "")
            + "\n"
        )
    if include_reports:
        if fmt == "text":
            out += "\nall reports:\n"
        elif fmt == "csv":
            out += "\n"
        out += render_reports(summary.reports, fmt)
    return out


def render_growth(res: GrowthResult, family: str, fmt: str) -> str:
    d = dict(res.to_dict(), family=family)
    if fmt == "json":
        return dumps(d) + "\n"
    cols = ("family", "r", "max_length", "count", "elements", "complete")
    return (_csv if fmt == "csv" else _text_table)([d], cols)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def parse_word(text: str) -> tuple[int, ...]:
    try:
        word = tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise UsageError(f"bad word {text!r}; expected comma-separated integers") from None
    if not word:
        raise UsageError("empty word")
    return word


def parse_vector(text: str, family: Family) -> RatVector:
    if text.strip().lower() == "delta":
        if family.delta is None:
            raise UsageError(f"family {family.name} has no default polarization")
        return family.delta
    try:
        parts = [Fraction(t) for t in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad vector {text!r}") from None
    if len(parts) != family.dim:
        raise UsageError(f"vector needs {family.dim} coordinates, got {len(parts)}")
    return RatVector(tuple(parts))


def _family(name: str) -> Family:
    try:
        return get_family(name)
    except (ValueError, InvolutionError) as exc:
        raise UsageError(str(exc)) from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _m_value(text: str) -> int:
    v = int(text)
    if not 1 <= v <= 4:
        raise argparse.ArgumentTypeError("m must be in 1..4")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--cache", metavar="PATH", help="JSON-lines report cache")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(
        prog="enriques-salem",
        description="Exact Salem-number computations for automorphisms of Enriques surfaces.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("experiment1", parents=[common], help="compositions of general double-plane involutions")

    e2 = sub.add_parser("experiment2", parents=[common], help="as experiment1 with m nodal generators")
    e2.add_argument("--m", type=_m_value, required=True)

    h = sub.add_parser("hessian", parents=[common], help="analyze one word over the Hessian projections")
    h.add_argument("--word", required=True, help="comma-separated pair indices 1..10")
    h.add_argument("--eckardt", default="none", help="none, table2, or pairs such as 12,13")

    s = sub.add_parser("search", parents=[common], help="exhaustive or random search for small Salem numbers")
    s.add_argument("--family", required=True, help="exp1, exp2:m, hessian or hessian:<eckardt>")
    s.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    s.add_argument("--max-len", type=_positive, required=True)
    s.add_argument("--distinct", action="store_true", help="only words with pairwise distinct letters")
    s.add_argument("--trials", type=_positive, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="max word classes analyzed")
    s.add_argument("--workers", type=_positive, default=1)
    s.add_argument("--all", action="store_true", help="also emit every analyzed report")

    g = sub.add_parser("growth", parents=[common], help="count elements with (g h, h) <= r")
    g.add_argument("--family", required=True)
    g.add_argument("--h", default="delta", help="'delta' or comma-separated rational coordinates")
    g.add_argument("--r", required=True, help="rational bound")
    g.add_argument("--max-len", type=int, required=True)
    g.add_argument("--budget", type=_positive, default=10**6, help="max group elements enumerated")
    return p


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _analyze_cached(word, fam: Family, cache: ReportCache) -> SalemReport:
    rep = cache.lookup(fam, word)
    if rep is None:
        rep = analyze(word, fam)
        cache.store(fam, rep)
    return rep


def _experiment(fam: Family, args, cache: ReportCache) -> tuple[str, int]:
    ks = list(range(2, len(fam) + 1))
    reports = [_analyze_cached(tuple(range(1, k + 1)), fam, cache) for k in ks]
    extra = {"k": [str(k) for k in ks], "hyperbolic": ["yes" if r.hyperbolic else "no" for r in reports]}
    return render_reports(reports, args.format, extra), EXIT_OK


def cmd_experiment1(args, cache):
    return _experiment(get_family("exp1"), args, cache)


def cmd_experiment2(args, cache):
    return _experiment(get_family(f"exp2:{args.m}"), args, cache)


def cmd_hessian(args, cache):
    fam = _family(f"hessian:{args.eckardt}")
    word = parse_word(args.word)
    bad = [k for k in word if not 1 <= k <= len(fam)]
    if bad:
        raise UsageError(f"pair indices {bad} outside 1..{len(fam)}")
    return render_reports([_analyze_cached(word, fam, cache)], args.format), EXIT_OK


def cmd_search(args, cache):
    _family(args.family)
    config = SearchConfig(
        family=args.family,
        mode=args.mode,
        max_length=args.max_len,
        distinct_letters=args.distinct,
        trials=args.trials,
        seed=args.seed,
        budget=args.budget,
        workers=args.workers,
        keep_reports=args.all,
    )
    summary = config.run(cache)
    code = EXIT_BUDGET if summary.budget_exhausted else EXIT_OK
    return render_summary(summary, args.format, args.all), code


def cmd_growth(args, cache):
    fam = _family(args.family)
    h = parse_vector(args.h, fam)
    try:
        config = GrowthConfig(args.family, Fraction(args.r), args.max_len, h, args.budget)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad growth flags: {exc}") from None
    try:
        res = config.run()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return render_growth(res, fam.name, args.format), EXIT_OK if res.complete else EXIT_BUDGET


COMMANDS = {
    "experiment1": cmd_experiment1,
    "experiment2": cmd_experiment2,
    "hessian": cmd_hessian,
    "search": cmd_search,
    "growth": cmd_growth,
}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    config = RunConfig(args.command, args.format, args.cache, getattr(args, "seed", 0))
    cache = ReportCache(config.cache)
    try:
        with cache:
            text, code = COMMANDS[args.command](args, cache)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.write(text)
    if code == EXIT_BUDGET:
        print(f"{parser.prog}: budget exhausted; results are partial", file=sys.stderr)
    return code


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""
Command-line interface for streak-test.
"""

from __future__ import annotations

import argparse
import datetime as dt
import itertools
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from .analysis import (
    ComponentHistograms,
    HistogramReport,
    Observation,
    ObservationResult,
    Scope,
    analyze_observation,
    batch_analyze,
    bias_table,
    exact_component_histograms,
    group_pvalues,
    null_component_histograms,
    null_histogram,
    pvalue_distribution_report,
    significance_counts,
    summarize_dataset,
)
from .errors import CapExceeded, ConfigError, RowError, ShotLogError, UntestableObservation
from .io import (
    emit_report,
    load_grid_mapping,
    load_results,
    read_shot_log,
    to_document,
    write_atomic,
)
from .render import (
    ReportDocument,
    ReportSection,
    counts_section,
    render_bias,
    render_histogram,
    render_pvalues,
    render_results,
    render_significance,
    render_summary,
    result_section,
)
from .resampling import (
    DEFAULT_ALPHA,
    DEFAULT_DEPTH,
    DEFAULT_ENUMERATION_CAP,
    DEFAULT_RESAMPLES,
    DEFAULT_SEED,
    NullModel,
    TestConfig,
    TestGrid,
    bernoulli_null,
)
from .stats import Outcome, ShotString, Statistic, evaluate

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNTESTABLE = 3
EXIT_DATA = 4
EXIT_CAP = 5

LOG_FORMAT = "%(asctime)s %(levelname)-8s %(name)s %(message)s"

# analyze works on a bare string; these fill the observation identity
ANALYZE_SUBJECT = "shots"
ANALYZE_DATE = dt.date(1970, 1, 1)
ANALYZE_OPPONENT = "-"

_TEST_STATS = ("tk", "tk-hit")
_NULLS = tuple(m.value for m in NullModel)


class UsageError(Exception):
    """Flag combination that argparse cannot reject on its own."""


class ResultsFileError(Exception):
    pass


def _configure_logging(verbose: bool) -> None:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root = logging.getLogger("streak_test")
    root.handlers[:] = [handler]
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)
    root.propagate = False


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {value}")
    return value


def _int_range(text: str) -> Tuple[int, int]:
    """`A:B` (inclusive) or a single integer."""
    lo, sep, hi = text.partition(":")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A:B, got {text!r}") from None
    if a < 0 or b < a:
        raise argparse.ArgumentTypeError(f"range {text!r} must satisfy 0 <= A <= B")
    return a, b


def _probability(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a probability, got {text!r}") from None
    if not 0 <= value <= 1:
        raise argparse.ArgumentTypeError(f"probability must lie in [0, 1], got {text}")
    return value


def _alpha(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError(f"alpha must lie strictly between 0 and 1, got {text}")
    return value


def _add_test_flags(p: argparse.ArgumentParser, *, multi: bool) -> None:
    nargs = "+" if multi else None
    p.add_argument("--k", type=_positive_int, nargs=nargs, default=None, help=f"Conditioning depth (default {DEFAULT_DEPTH})")
    p.add_argument("--stat", choices=_TEST_STATS, nargs=nargs, default=None, help="Test statistic (default tk)")
    p.add_argument("--null", choices=_NULLS, nargs=nargs, default=None, help="Null model (default perm)")
    p.add_argument("--resamples", type=_positive_int, default=None, help=f"Monte Carlo draws (default {DEFAULT_RESAMPLES})")
    p.add_argument("--seed", type=int, default=None, help=f"Master seed (default {DEFAULT_SEED})")
    p.add_argument("--alpha", type=_alpha, default=None, help=f"Significance level (default {DEFAULT_ALPHA})")
    p.add_argument(
        "--exact",
        action="store_true",
        default=None,
        help="Enumerate every arrangement instead of sampling (permutation null only)",
    )
    p.add_argument("--cap", type=_positive_int, default=None, help=f"Enumeration cap (default {DEFAULT_ENUMERATION_CAP})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="streak-test",
        description="Permutation and Bernoulli tests for streakiness in binary shot sequences",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # One game, default t_2 permutation test
  streak-test analyze --shots 11011110010111111001110111101110111101010101 --k 2 --seed 1

  # A season of shot logs against a grid of tests
  streak-test batch --input shots.csv --output out/ --k 1 2 3 --null perm bern-game

  # Exact null means over small strings
  streak-test bias --length-range 3:12 --k 1
        """,
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Log progress at DEBUG level on stderr")
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    analyze = subparsers.add_parser(
        "analyze",
        help="Test one shot string",
        description="Observed statistic, p-value and verdict for a single shot string",
    )
    analyze.add_argument("--shots", required=True, help="Shot string of 1 (hit) and 0 (miss)")
    _add_test_flags(analyze, multi=False)
    analyze.add_argument("--p", type=_probability, default=None, help="Hit probability for the bern-season null")
    analyze.add_argument("--histogram", type=str, default=None, help="Also write the null histogram JSON to this path")
    analyze.add_argument("--bins", type=_positive_int, default=40, help="Histogram bins over [-1, 1] (default 40)")
    analyze.add_argument("--format", choices=("human", "json"), default="human")

    batch = subparsers.add_parser(
        "batch",
        help="Test every observation of a shot log",
        description="Run a shot log against a grid of tests and write results, summary and significance tables",
    )
    batch.add_argument("--input", required=True, help="Shot log CSV (subject,date,opponent,scope,shots)")
    batch.add_argument("--output", required=True, help="Directory for results.json, summary and significance files")
    batch.add_argument("--config", default=None, help="YAML grid file; flags override its values")
    _add_test_flags(batch, multi=True)
    batch.add_argument("--workers", type=_positive_int, default=None, help="Worker threads (default 1)")
    batch.add_argument("--lenient", action="store_true", help="Skip invalid rows instead of failing")
    batch.add_argument("--format", choices=("human", "json"), default="human", help="Format of the totals line")
    batch.add_argument(
        "--details", action="store_true", help="With human format, also print the season summary and every result"
    )

    bias = subparsers.add_parser(
        "bias",
        help="Exact null means of the statistic",
        description="Mean of the statistic over all arrangements, for a grid of lengths and hit counts",
    )
    bias.add_argument("--length-range", type=_int_range, required=True, metavar="A:B", help="String lengths, inclusive")
    bias.add_argument("--hits-range", type=_int_range, default=None, metavar="A:B", help="Hit counts (default 1..L-1)")
    bias.add_argument("--k", type=_positive_int, default=DEFAULT_DEPTH, help=f"Conditioning depth (default {DEFAULT_DEPTH})")
    bias.add_argument("--stat", choices=[s.value for s in Statistic], default="tk")
    bias.add_argument("--cap", type=_positive_int, default=DEFAULT_ENUMERATION_CAP)
    bias.add_argument("--format", choices=("csv", "json", "human"), default="csv")
    bias.add_argument("--output", default=None, help="Write to this file instead of stdout")

    report = subparsers.add_parser(
        "report",
        help="p-value distributions and significance counts from batch results",
        description="Per-subject p-value summaries and significance table from a results.json",
    )
    report.add_argument("--input", required=True, help="results.json written by batch")
    report.add_argument("--output", default=None, help="Directory for pvalues and significance files")
    report.add_argument("--k", type=_positive_int, default=DEFAULT_DEPTH)
    report.add_argument("--stat", choices=_TEST_STATS, default="tk")
    report.add_argument("--null", choices=_NULLS, default="perm")
    report.add_argument("--alpha", type=_alpha, default=DEFAULT_ALPHA, help=f"Significance level (default {DEFAULT_ALPHA})")
    report.add_argument("--format", choices=("human", "json", "csv"), default="human")

    return parser


def _print(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _print_bytes(data: bytes) -> None:
    _print(data.decode("utf-8"))


# ----------------------------
# analyze
# ----------------------------


def _analyze_config(args: argparse.Namespace) -> TestConfig:
    return TestConfig(
        depth=args.k if args.k is not None else DEFAULT_DEPTH,
        statistic=args.stat or "tk",
        null_model=args.null or "perm",
        resamples=args.resamples if args.resamples is not None else DEFAULT_RESAMPLES,
        seed=args.seed if args.seed is not None else DEFAULT_SEED,
        alpha=args.alpha if args.alpha is not None else DEFAULT_ALPHA,
        enumeration_cap=args.cap if args.cap is not None else DEFAULT_ENUMERATION_CAP,
    )


def _analyze_histogram(
    s: ShotString, cfg: TestConfig, rate: Optional[Fraction], exact: bool, bins: int
) -> Union[HistogramReport, ComponentHistograms]:
    if exact:
        return exact_component_histograms(s, cfg.depth, cfg, bins)
    if cfg.null_model is NullModel.PERMUTATION:
        return null_component_histograms(s, cfg.depth, cfg, bins)
    p = rate if cfg.null_model is NullModel.BERNOULLI_SEASON else s.hit_rate
    null = bernoulli_null(s.length, p, cfg)
    return null_histogram(null, evaluate(cfg.statistic, s, cfg.depth), cfg.alpha, bins)


def _describe(s: ShotString, k: int) -> ReportSection:
    sec = ReportSection("String")
    sec.add_field("shots", str(s))
    sec.add_field("hits", f"{s.hits} of {s.length}")
    sec.add_field("runs", s.run_count)
    sec.add_field("longest hit run", s.longest_run(Outcome.HIT))
    sec.add_field("longest miss run", s.longest_run(Outcome.MISS))
    sec.add_item(counts_section(s, k))
    return sec


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        s = ShotString.parse(args.shots.strip())
    except ValueError as e:
        raise UsageError(f"--shots: {e}") from None
    cfg = _analyze_config(args)
    exact = bool(args.exact)
    if exact and cfg.null_model is not NullModel.PERMUTATION:
        raise UsageError("--exact applies to the perm null only")
    rate: Optional[Fraction] = None
    if args.p is not None:
        if cfg.null_model is not NullModel.BERNOULLI_SEASON:
            raise UsageError("--p sets the bern-season hit rate; bern-game uses the string's own rate")
        rate = args.p
    elif cfg.null_model is NullModel.BERNOULLI_SEASON:
        raise UsageError("--null bern-season needs --p (season-to-date hit rate)")

    obs = Observation(ANALYZE_SUBJECT, ANALYZE_DATE, ANALYZE_OPPONENT, Scope.GAME, s)
    code = EXIT_OK
    try:
        result = analyze_observation(obs, cfg, season_pct_to_date=rate, exact=exact)
    except UntestableObservation as e:
        result = ObservationResult.untestable(obs, cfg, e.reason, exact=exact)
        print(f"Error: untestable: {e.reason}", file=sys.stderr)
        code = EXIT_UNTESTABLE

    histogram = None
    if args.histogram and code == EXIT_OK:
        histogram = _analyze_histogram(s, cfg, rate, exact, args.bins)
        path = write_atomic(args.histogram, emit_report(histogram, "json"))
        logger.info("wrote %s", path)

    if args.format == "json":
        _print_bytes(emit_report([result], "json"))
    else:
        doc = ReportDocument(title=f"{cfg.statistic.label} test, k={cfg.depth}")
        doc.add_section(_describe(s, cfg.depth))
        doc.add_section(result_section(result))
        _print(doc.render())
        if histogram is not None:
            _print(render_histogram(histogram))
    return code


# ----------------------------
# batch
# ----------------------------


def _batch_grid(args: argparse.Namespace) -> TestGrid:
    mapping: Dict[str, Any] = load_grid_mapping(args.config) if args.config else {}
    flags = {
        "k": args.k,
        "stat": args.stat,
        "null": args.null,
        "resamples": args.resamples,
        "seed": args.seed,
        "alpha": args.alpha,
        "exact": args.exact,
        "cap": args.cap,
        "workers": args.workers,
    }
    mapping.update({key: value for key, value in flags.items() if value is not None})
    return TestGrid.from_mapping(mapping)


def _variant_suffix(grid: TestGrid, statistic: Statistic, null_model: NullModel) -> str:
    if len(grid.statistics) == 1 and len(grid.null_models) == 1:
        return ""
    return f"-{statistic.value}-{null_model.value}"


def cmd_batch(args: argparse.Namespace) -> int:
    grid = _batch_grid(args)
    rejected: List[RowError] = []
    dataset = read_shot_log(args.input, lenient=args.lenient, rejected=rejected)
    results = batch_analyze(dataset, grid)

    out = Path(args.output)
    written = [write_atomic(out / "results.json", emit_report(results, "json"))]
    summary = summarize_dataset(dataset)
    for fmt in ("json", "csv"):
        written.append(write_atomic(out / f"summary.{fmt}", emit_report(summary, fmt)))
    for statistic, null_model in itertools.product(grid.statistics, grid.null_models):
        table = significance_counts(results, grid.alpha, statistic, null_model, grid.depths)
        suffix = _variant_suffix(grid, statistic, null_model)
        for fmt in ("json", "csv"):
            written.append(write_atomic(out / f"significance{suffix}.{fmt}", emit_report(table, fmt)))
    for path in written:
        logger.info("wrote %s", path)

    totals = {
        "observations": len(dataset),
        "tests": len(results),
        "untestable": sum(1 for r in results if not r.testable),
        "significant": sum(1 for r in results if r.significant),
        "rejected_rows": len(rejected),
        "alpha": grid.alpha,
        "output": str(out),
    }
    if args.format == "json":
        _print(json.dumps(totals))
    else:
        line = (
            f"{totals['observations']} observations, {totals['tests']} tests, "
            f"{totals['untestable']} untestable, {totals['significant']} significant at alpha={grid.alpha}"
        )
        if rejected:
            line += f", {len(rejected)} rows skipped"
        _print(f"{line}; wrote {out}")
        if args.details:
            _print(render_summary(summary))
            _print(render_results(results, title="Results"))
    return EXIT_OK


# ----------------------------
# bias
# ----------------------------


def cmd_bias(args: argparse.Namespace) -> int:
    lo, hi = args.length_range
    hits: Optional[Sequence[int]] = None
    if args.hits_range is not None:
        hits = range(args.hits_range[0], args.hits_range[1] + 1)
    rows = bias_table(range(lo, hi + 1), args.k, Statistic(args.stat), hits=hits, cap=args.cap)
    data = render_bias(rows).encode("utf-8") if args.format == "human" else emit_report(rows, args.format)
    if args.output:
        write_atomic(args.output, data)
    else:
        _print_bytes(data)
    return EXIT_OK


# ----------------------------
# report
# ----------------------------


def cmd_report(args: argparse.Namespace) -> int:
    try:
        _, results = load_results(args.input)
    except FileNotFoundError:
        raise
    except (ValueError, KeyError, TypeError) as e:
        raise ResultsFileError(f"{args.input}: not a results document ({e})") from None
    statistic, null_model = Statistic(args.stat), NullModel(args.null)
    pvalues = pvalue_distribution_report(group_pvalues(results, args.k, statistic, null_model))
    table = significance_counts(results, args.alpha, statistic, null_model)

    if args.output:
        fmt = "json" if args.format == "human" else args.format
        out = Path(args.output)
        write_atomic(out / f"pvalues.{fmt}", emit_report(pvalues, fmt))
        write_atomic(out / f"significance.{fmt}", emit_report(table, fmt))
        _print(f"{len(pvalues)} subject(s); wrote {out}")
    elif args.format == "human":
        _print(render_pvalues(pvalues))
        _print(render_significance(table))
    elif args.format == "json":
        _print(json.dumps({"pvalues": to_document(pvalues), "significance": to_document(table)}, indent=2))
    else:
        _print_bytes(emit_report(pvalues, "csv"))
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "batch": cmd_batch,
    "bias": cmd_bias,
    "report": cmd_report,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point for the CLI; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    if not args.command:
        parser.print_help()
        return EXIT_USAGE

    _configure_logging(args.verbose)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ConfigError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ShotLogError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_DATA
    except ResultsFileError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_DATA
    except CapExceeded as e:
        print(f"Error: {e}; rerun without --exact or raise --cap", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())

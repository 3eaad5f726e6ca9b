"""Command-line interface.

Every command writes ``<command>.csv`` and ``<command>.json`` into
``--out-dir`` (``ingest`` writes the corpus file given by ``--out``) and
prints a short summary. All randomness derives from ``--seed`` (default 0).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .corpus import SOURCES, Corpus, CorpusError, EmptyCorpusError, load_raw, read_jsonl, write_jsonl
from .experiments import (
    ExperimentError,
    bleu_retrieval,
    full_eval,
    modification_sweep,
    ratio_grid,
    refcount_curve,
    sampled_eval,
)
from .metrics import MetricError
from .parrot import MODES, POSITIONS, ParrotConfig, ParrotError
from . import results

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_UNREADABLE = 3
EXIT_EMPTY = 4

REPORT_HELP = "CSV columns: " + ", ".join(results.REPORT_COLUMNS)

COMMAND_HELP = {
    "ingest": "normalize a raw dataset into a JSON-lines corpus. "
              "CSV (<out-dir>/stats.csv when --out-dir is given): ref_count, entries, percent",
    "stats": "reference-count histogram. CSV columns: ref_count, entries, percent",
    "eval": "parrot every entry and score it. " + REPORT_HELP,
    "sample-eval": "full parroting on random test sets. "
                   "CSV columns: metric, average, stddev, max, min, runs",
    "refcurve": "full-parrot scores per reference count. "
                "CSV columns: ref_count, pooled, " + ", ".join(results.REPORT_COLUMNS),
    "sweep": "cut/replace ratio sweep. CSV columns: nominal_ratio, realized_ratio, "
             + ", ".join(results.REPORT_COLUMNS),
    "retrieval": "sentence-BLEU buckets of references and random distractors. "
                 "CSV columns: bucket_low, bucket_high, bucket, score, is_reference, text",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--corpus", type=Path, required=True, help="normalized corpus (.jsonl)")
    p.add_argument("--min-refs", type=int, default=1,
                   help="drop entries with fewer references (default 1 keeps all)")
    p.add_argument("--out-dir", type=Path, default=Path("."),
                   help="directory for <command>.csv/.json (default: current directory)")
    p.add_argument("--seed", type=int, default=0, help="seed for all randomness (default 0)")
    p.add_argument("--workers", type=int, default=1,
                   help="parallel scoring processes; results do not depend on it")


def _parrot_flags(p: argparse.ArgumentParser, modes: Sequence[str]) -> None:
    p.add_argument("--mode", choices=modes, default=modes[0])
    p.add_argument("--position", choices=POSITIONS, default="head")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="parroteval", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ingest", help=COMMAND_HELP["ingest"], description=COMMAND_HELP["ingest"])
    p.add_argument("--source", choices=SOURCES, required=True)
    p.add_argument("--in", dest="input", type=Path, required=True, help="raw dataset file")
    p.add_argument("--out", type=Path, required=True, help="output corpus (.jsonl)")
    p.add_argument("--twitter-threshold", type=int, default=4,
                   help="minimum annotator votes for a positive Twitter pair (default 4)")
    p.add_argument("--min-refs", type=int, default=1)
    p.add_argument("--out-dir", type=Path, default=None,
                   help="if given, also write stats.csv/.json here")

    p = sub.add_parser("stats", help=COMMAND_HELP["stats"], description=COMMAND_HELP["stats"])
    _common(p)

    p = sub.add_parser("eval", help=COMMAND_HELP["eval"], description=COMMAND_HELP["eval"])
    _common(p)
    _parrot_flags(p, MODES)
    p.add_argument("--ratio", type=float, default=0.0, help="fraction of tokens cut/replaced")

    p = sub.add_parser("sample-eval", help=COMMAND_HELP["sample-eval"],
                       description=COMMAND_HELP["sample-eval"])
    _common(p)
    p.add_argument("--size", type=int, required=True, help="entries per test set")
    p.add_argument("--runs", type=int, required=True, help="number of test sets")

    p = sub.add_parser("refcurve", help=COMMAND_HELP["refcurve"],
                       description=COMMAND_HELP["refcurve"])
    _common(p)
    p.add_argument("--max-bucket", type=int, default=30,
                   help="pool entries with at least this many references (default 30)")

    p = sub.add_parser("sweep", help=COMMAND_HELP["sweep"], description=COMMAND_HELP["sweep"])
    _common(p)
    _parrot_flags(p, ("cut", "replace"))
    p.add_argument("--step", type=float, default=0.02, help="ratio grid step (default 0.02)")
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--stop", type=float, default=1.0)

    p = sub.add_parser("retrieval", help=COMMAND_HELP["retrieval"],
                       description=COMMAND_HELP["retrieval"])
    _common(p)
    p.add_argument("--entry-id", required=True)
    p.add_argument("--num-references", type=int, default=5)
    p.add_argument("--num-distractors", type=int, default=100)
    p.add_argument("--input-as-hypothesis", action="store_true",
                   help="score the input against each pool sentence instead")
    return parser


def _load(args) -> Corpus:
    if args.min_refs < 1:
        raise CorpusError("--min-refs must be at least 1")
    corpus = read_jsonl(args.corpus)
    return corpus.filter(args.min_refs) if args.min_refs > 1 else corpus


def _emit(args, command: str, config: dict, rows, columns, payload) -> None:
    out_dir: Path = args.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = command.replace("-", "_")
    results.write_csv(out_dir / f"{stem}.csv", rows, columns)
    results.write_json(out_dir / f"{stem}.json", command, config, payload)


def _config(args, **extra) -> dict:
    config = {
        "corpus": str(args.corpus), "min_refs": args.min_refs, "seed": args.seed,
    }
    config.update(extra)
    return config


def _cmd_ingest(args) -> None:
    corpus = load_raw(args.input, args.source, args.twitter_threshold)
    if args.min_refs > 1:
        corpus = corpus.filter(args.min_refs)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    write_jsonl(corpus, args.out)
    hist = corpus.stats
    single = hist.percentages.get(1, 0.0)
    print(f"{len(corpus)} entries from {args.input} ({args.source}); "
          f"{corpus.skipped_records} records skipped")
    print(f"single-reference entries: {single:.2f}%")
    if single > 0:
        print("warning: single-reference entries are unreliable for n-gram metrics; "
              "use --min-refs 2 to drop them")
    for row in results.histogram_rows(hist)[:10]:
        print(f"  {row['ref_count']:>4} refs: {row['entries']:>8} ({row['percent']:.2f}%)")
    if args.out_dir is not None:
        rows = results.histogram_rows(hist)
        _emit(args, "stats", {"input": str(args.input), "source": args.source,
                              "min_refs": args.min_refs}, rows,
              ["ref_count", "entries", "percent"], rows)


def _cmd_stats(args) -> None:
    corpus = _load(args)
    rows = results.histogram_rows(corpus.stats)
    _emit(args, "stats", _config(args), rows, ["ref_count", "entries", "percent"], rows)
    print(f"{len(corpus)} entries")
    for row in rows:
        print(f"  {row['ref_count']:>4} refs: {row['entries']:>8} ({row['percent']:.2f}%)")


def _print_report(label: str, row: dict) -> None:
    print(f"{label}BLEU {row['bleu']:.2f}  METEOR {row['meteor']:.2f}  "
          f"TER {row['ter']:.2f}  ({row['entry_count']} entries)")


def _cmd_eval(args) -> None:
    corpus = _load(args)
    config = ParrotConfig(args.mode, args.position, args.ratio if args.mode != "full" else 0.0,
                          args.seed)
    report = full_eval(corpus, config, args.workers)
    row = results.report_row(report)
    _emit(args, "eval", _config(args, mode=config.mode, position=config.position,
                                ratio=config.ratio),
          [row], results.REPORT_COLUMNS, row)
    _print_report("", row)


def _cmd_sample_eval(args) -> None:
    corpus = _load(args)
    stats, reports = sampled_eval(corpus, args.size, args.runs, args.seed, args.workers)
    rows = results.sample_rows(stats)
    payload = {"statistics": rows, "runs": [results.report_row(r) for r in reports]}
    _emit(args, "sample-eval", _config(args, size=args.size, runs=args.runs), rows,
          ["metric", "average", "stddev", "max", "min", "runs"], payload)
    print(f"{args.runs} test sets of {args.size} entries")
    for row in rows:
        sd = row["stddev"]
        sd_text = f"{sd:.2f}" if sd != "" else "-"
        print(f"  {row['metric']:<7} avg {row['average']:.2f}  sd {sd_text}  "
              f"max {row['max']:.2f}  min {row['min']:.2f}")


def _cmd_refcurve(args) -> None:
    corpus = _load(args)
    points = refcount_curve(corpus, args.max_bucket, args.workers)
    rows = results.refcurve_rows(points)
    _emit(args, "refcurve", _config(args, max_bucket=args.max_bucket), rows,
          ["ref_count", "pooled"] + results.REPORT_COLUMNS, rows)
    for p, row in zip(points, rows):
        _print_report(f"{p.ref_count:>3}{'+' if p.pooled else ' '} refs: ", row)


def _cmd_sweep(args) -> None:
    corpus = _load(args)
    ratios = ratio_grid(args.step, args.start, args.stop)
    points = modification_sweep(corpus, args.mode, args.position, ratios, args.seed,
                                args.workers)
    rows = results.sweep_rows(points)
    _emit(args, "sweep", _config(args, mode=args.mode, position=args.position,
                                 step=args.step, start=args.start, stop=args.stop),
          rows, ["nominal_ratio", "realized_ratio"] + results.REPORT_COLUMNS, rows)
    for p, row in zip(points, rows):
        _print_report(f"ratio {p.nominal_ratio:.2f} (realized {p.realized_ratio:.3f}): ", row)


def _cmd_retrieval(args) -> None:
    corpus = _load(args)
    buckets = bleu_retrieval(corpus, args.entry_id, args.num_references,
                             args.num_distractors, args.seed,
                             input_as_hypothesis=args.input_as_hypothesis)
    rows = results.retrieval_rows(buckets)
    _emit(args, "retrieval",
          _config(args, entry_id=args.entry_id, num_references=args.num_references,
                  num_distractors=args.num_distractors,
                  input_as_hypothesis=args.input_as_hypothesis),
          rows, ["bucket_low", "bucket_high", "bucket", "score", "is_reference", "text"], rows)
    print(f"input: {' '.join(corpus.by_id(args.entry_id).input)}")
    for b in buckets:
        print(f"  {b.label:<12} {len(b.members):>3} sentences "
              f"({sum(m.is_reference for m in b.members)} references)")


COMMANDS = {
    "ingest": _cmd_ingest,
    "stats": _cmd_stats,
    "eval": _cmd_eval,
    "sample-eval": _cmd_sample_eval,
    "refcurve": _cmd_refcurve,
    "sweep": _cmd_sweep,
    "retrieval": _cmd_retrieval,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        COMMANDS[args.command](args)
    except EmptyCorpusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        print(f"error: cannot read or write file: {exc}", file=sys.stderr)
        return EXIT_UNREADABLE
    except (CorpusError, ExperimentError, MetricError, ParrotError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

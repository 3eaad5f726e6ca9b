"""CSV and JSON emission of experiment results."""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any, Iterable, Sequence

from .corpus import ReferenceHistogram
from .experiments import RefCountPoint, RetrievalBucket, SampleStats, SweepPoint
from .metrics import MetricReport

SCHEMA_VERSION = 1

REPORT_COLUMNS = [
    "entry_count", "bleu", "meteor", "ter",
    "bleu_bp", "bleu_hyp_len", "bleu_ref_len",
    "bleu_p1", "bleu_p2", "bleu_p3", "bleu_p4",
    "meteor_precision", "meteor_recall", "meteor_matches", "meteor_chunks",
    "ter_edits", "ter_ref_len",
]


def report_row(report: MetricReport) -> dict[str, Any]:
    p = report.bleu.precisions
    return {
        "entry_count": report.entry_count,
        "bleu": report.bleu.value,
        "meteor": report.meteor.value,
        "ter": report.ter.value,
        "bleu_bp": report.bleu.brevity_penalty,
        "bleu_hyp_len": report.bleu.hyp_len,
        "bleu_ref_len": report.bleu.eff_ref_len,
        "bleu_p1": p[0], "bleu_p2": p[1], "bleu_p3": p[2], "bleu_p4": p[3],
        "meteor_precision": report.meteor.precision,
        "meteor_recall": report.meteor.recall,
        "meteor_matches": report.meteor.matches,
        "meteor_chunks": report.meteor.chunks,
        "ter_edits": report.ter.edits,
        "ter_ref_len": report.ter.avg_ref_len,
    }


def histogram_rows(hist: ReferenceHistogram) -> list[dict[str, Any]]:
    pct = hist.percentages
    return [
        {"ref_count": k, "entries": v, "percent": pct[k]} for k, v in hist.buckets.items()
    ]


def sample_rows(stats: dict[str, SampleStats]) -> list[dict[str, Any]]:
    return [
        {
            "metric": s.metric, "average": s.average,
            "stddev": "" if s.stddev is None else s.stddev,
            "max": s.max, "min": s.min, "runs": s.runs,
        }
        for s in stats.values()
    ]


def refcurve_rows(points: Sequence[RefCountPoint]) -> list[dict[str, Any]]:
    return [
        {"ref_count": p.ref_count, "pooled": int(p.pooled), **report_row(p.report)}
        for p in points
    ]


def sweep_rows(points: Sequence[SweepPoint]) -> list[dict[str, Any]]:
    return [
        {"nominal_ratio": p.nominal_ratio, "realized_ratio": p.realized_ratio,
         **report_row(p.report)}
        for p in points
    ]


def retrieval_rows(buckets: Sequence[RetrievalBucket]) -> list[dict[str, Any]]:
    rows = []
    for b in buckets:
        for m in b.members:
            rows.append({
                "bucket_low": b.low, "bucket_high": b.high, "bucket": b.label,
                "score": m.score, "is_reference": int(m.is_reference), "text": m.text,
            })
    return rows


def write_csv(path: Path, rows: Iterable[dict[str, Any]], columns: Sequence[str]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(columns), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def write_json(path: Path, command: str, config: dict[str, Any], results: Any) -> None:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": config,
        "results": results,
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True, ensure_ascii=False)
        fh.write("\n")

"""Parroting experiments: full evaluation, sampled test sets, reference-count
curves, cut/replace sweeps and sentence-BLEU retrieval buckets."""

from __future__ import annotations

import logging
import math
import random
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .corpus import Corpus, CorpusError, ParaphraseEntry, sample_test_set
from .metrics import CorpusTotals, MetricReport, bleu_sentence, score_entry
from .metrics.report import sum_totals
from .parrot import ParrotConfig, apply
from .text_core import TokenSeq, detokenize

log = logging.getLogger(__name__)

METRICS = ("bleu", "meteor", "ter")
FULL = ParrotConfig()


class ExperimentError(ValueError):
    pass


@dataclass(frozen=True)
class EntryResult:
    totals: CorpusTotals
    modified_ratio: Fraction


def _score_one(entry: ParaphraseEntry, index: int, config: ParrotConfig) -> EntryResult:
    out = apply(entry.input, entry.references, config, index)
    n = len(entry.input)
    ratio = Fraction(len(out.modified_positions), n) if n else Fraction(0)
    return EntryResult(CorpusTotals.of(score_entry(out.output, entry.references)), ratio)


def _score_chunk(args) -> list[EntryResult]:
    entries, start, config = args
    return [_score_one(e, start + i, config) for i, e in enumerate(entries)]


def score_entries(
    corpus: Corpus, config: ParrotConfig = FULL, workers: int = 1
) -> list[EntryResult]:
    """Transform and score every entry; results are in entry-index order."""
    entries = corpus.entries
    if not entries:
        raise ExperimentError("empty corpus")
    if workers <= 1 or len(entries) < 2 * workers:
        return _score_chunk((entries, 0, config))
    size = math.ceil(len(entries) / (workers * 4))
    jobs = [(entries[i:i + size], i, config) for i in range(0, len(entries), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        chunks = list(pool.map(_score_chunk, jobs))
    return [r for chunk in chunks for r in chunk]


def report_of(results: Sequence[EntryResult]) -> MetricReport:
    return MetricReport.from_totals(sum_totals(r.totals for r in results))


def full_eval(corpus: Corpus, config: ParrotConfig = FULL, workers: int = 1) -> MetricReport:
    return report_of(score_entries(corpus, config, workers))


# --- sampled test sets -----------------------------------------------------


@dataclass(frozen=True)
class SampleStats:
    metric: str
    average: float
    stddev: Optional[float]
    max: float
    min: float
    runs: int


def sample_stats(metric: str, values: Sequence[float]) -> SampleStats:
    return SampleStats(
        metric,
        statistics.fmean(values),
        statistics.stdev(values) if len(values) >= 2 else None,
        max(values),
        min(values),
        len(values),
    )


def _metric_values(report: MetricReport) -> dict[str, float]:
    return {"bleu": report.bleu.value, "meteor": report.meteor.value, "ter": report.ter.value}


def sampled_eval(
    corpus: Corpus, size: int, runs: int, base_seed: int = 0, workers: int = 1
) -> tuple[dict[str, SampleStats], list[MetricReport]]:
    """Full-parrot scores over ``runs`` random test sets of ``size`` entries.

    Run ``r`` samples with seed ``base_seed + r``. Full parroting scores
    each entry independently of the sample, so entries are scored once
    and each run sums the exact per-entry statistics of its sample.
    """
    if runs < 1:
        raise ExperimentError("runs must be at least 1")
    if size > len(corpus):
        raise CorpusError(f"sample size {size} exceeds corpus size {len(corpus)}")
    results = score_entries(corpus, FULL, workers)
    index = {e.id: i for i, e in enumerate(corpus.entries)}
    reports = []
    for run in range(runs):
        sample = sample_test_set(corpus, size, base_seed + run)
        reports.append(report_of([results[index[e.id]] for e in sample.entries]))
    per_metric = {m: [_metric_values(r)[m] for r in reports] for m in METRICS}
    return {m: sample_stats(m, v) for m, v in per_metric.items()}, reports


# --- reference-count curve -------------------------------------------------


@dataclass(frozen=True)
class RefCountPoint:
    ref_count: int
    pooled: bool  # True when the bucket holds every entry with >= ref_count refs
    report: MetricReport


def refcount_curve(
    corpus: Corpus, max_bucket: int = 30, workers: int = 1
) -> list[RefCountPoint]:
    """Full-parrot report per reference count; counts >= ``max_bucket`` are pooled."""
    if max_bucket < 1:
        raise ExperimentError("max_bucket must be at least 1")
    results = score_entries(corpus, FULL, workers)
    groups: dict[int, list[EntryResult]] = {}
    for entry, result in zip(corpus.entries, results):
        groups.setdefault(min(len(entry.references), max_bucket), []).append(result)
    return [
        RefCountPoint(k, k == max_bucket, report_of(groups[k])) for k in sorted(groups)
    ]


# --- modification sweep ----------------------------------------------------


@dataclass(frozen=True)
class SweepPoint:
    nominal_ratio: float
    realized_ratio: float
    report: MetricReport


def ratio_grid(step: float = 0.02, start: float = 0.0, stop: float = 1.0) -> list[float]:
    """Evenly spaced ratios from ``start`` to ``stop`` inclusive."""
    if step <= 0:
        raise ExperimentError("step must be positive")
    count = int(round((stop - start) / step))
    return [round(start + i * step, 10) for i in range(count + 1)]


def modification_sweep(
    corpus: Corpus,
    mode: str,
    position: str,
    ratios: Sequence[float],
    seed: int = 0,
    workers: int = 1,
) -> list[SweepPoint]:
    """One corpus evaluation per ratio; ``realized_ratio`` is the corpus-mean
    fraction of input tokens actually modified."""
    if mode not in ("cut", "replace"):
        raise ExperimentError(f"sweep mode must be cut or replace, got {mode!r}")
    if any(not 0.0 <= r <= 1.0 for r in ratios):
        raise ExperimentError("ratios must lie in [0, 1]")
    if any(b <= a for a, b in zip(ratios, ratios[1:])):
        raise ExperimentError("ratios must be strictly increasing")
    points = []
    for ratio in ratios:
        config = ParrotConfig(mode, position, ratio, seed)
        results = score_entries(corpus, config, workers)
        realized = sum((r.modified_ratio for r in results), Fraction(0)) / len(results)
        points.append(SweepPoint(ratio, float(realized), report_of(results)))
    return points


# --- sentence-BLEU retrieval -----------------------------------------------


@dataclass(frozen=True)
class RetrievalMember:
    text: str
    score: float
    is_reference: bool


@dataclass(frozen=True)
class RetrievalBucket:
    low: float
    high: float
    closed: bool  # whether ``high`` itself belongs to the bucket
    members: list[RetrievalMember]

    def contains(self, score: float) -> bool:
        return self.low <= score < self.high or (self.closed and score == self.high)

    @property
    def label(self) -> str:
        return f"{self.low:g} - {self.high:g}"


def default_buckets() -> list[tuple[float, float]]:
    edges = [0.0] + [round(0.15 + 0.05 * i, 2) for i in range(18)]
    return list(zip(edges, edges[1:]))


def bleu_retrieval(
    corpus: Corpus,
    entry_id: str,
    num_references: int = 5,
    num_distractors: int = 100,
    seed: int = 0,
    buckets: Optional[Sequence[tuple[float, float]]] = None,
    input_as_hypothesis: bool = False,
) -> list[RetrievalBucket]:
    """Bucket reference and random non-reference sentences by sentence BLEU
    against one input sentence.

    By default each pool sentence is the hypothesis and the input is the
    single reference; ``input_as_hypothesis`` flips the direction.
    Distractors are drawn per input sentence from every other distinct
    sentence in the corpus.
    """
    entry = corpus.by_id(entry_id)
    if len(entry.references) < num_references:
        raise ExperimentError(
            f"entry {entry_id!r} has {len(entry.references)} references, "
            f"{num_references} requested"
        )
    excluded = {entry.input, *entry.references}
    candidates: dict[TokenSeq, None] = {}
    for other in corpus.entries:
        for sent in (other.input, *other.references):
            if sent not in excluded:
                candidates[sent] = None
    if len(candidates) < num_distractors:
        raise ExperimentError(
            f"only {len(candidates)} non-reference sentences, {num_distractors} requested"
        )
    rng = random.Random(f"retrieval:{seed}:{entry_id}")
    distractors = rng.sample(list(candidates), num_distractors)

    pool = [(r, True) for r in entry.references[:num_references]]
    pool += [(d, False) for d in distractors]

    intervals = list(buckets) if buckets is not None else default_buckets()
    top = max(hi for _, hi in intervals)
    out = [RetrievalBucket(lo, hi, hi == top, []) for lo, hi in intervals]
    for sent, is_ref in pool:
        if input_as_hypothesis:
            score = bleu_sentence(entry.input, [sent]).value
        else:
            score = bleu_sentence(sent, [entry.input]).value
        for bucket in out:
            if bucket.contains(score):
                bucket.members.append(RetrievalMember(detokenize(sent), score, is_ref))
                break
        else:
            log.warning("score %.4f falls outside every bucket", score)
    for bucket in out:
        bucket.members.sort(key=lambda m: (-m.score, m.text))
    return sorted(out, key=lambda b: -b.low)

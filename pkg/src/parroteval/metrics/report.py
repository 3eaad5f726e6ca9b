"""Corpus aggregation of BLEU, METEOR and TER.

Aggregates are kept as exact sufficient statistics (integers and
fractions), so merging partial results in any grouping or order gives
bit-identical reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from ..text_core import TokenSeq
from .bleu import BleuScore, BleuStats, bleu_stats, score_from_stats
from .errors import MetricError
from .meteor import MeteorScore, meteor
from .ter import TerScore, ter_parts


@dataclass(frozen=True)
class EntryScores:
    """Per-entry contribution to a corpus report."""

    bleu: BleuStats
    meteor: MeteorScore
    ter_edits: int
    ter_ref_len: Fraction


def score_entry(hypothesis: TokenSeq, references: Iterable[TokenSeq]) -> EntryScores:
    refs = tuple(references)
    edits, avg_len = ter_parts(hypothesis, refs)
    return EntryScores(bleu_stats(hypothesis, refs), meteor(hypothesis, refs), edits, avg_len)


@dataclass(frozen=True)
class CorpusTotals:
    bleu: BleuStats = field(default_factory=BleuStats)
    meteor_sum: Fraction = Fraction(0)
    precision_sum: Fraction = Fraction(0)
    recall_sum: Fraction = Fraction(0)
    matches: int = 0
    chunks: int = 0
    ter_edits: int = 0
    ter_ref_len: Fraction = Fraction(0)
    entry_count: int = 0

    def __add__(self, other: "CorpusTotals") -> "CorpusTotals":
        return CorpusTotals(
            self.bleu + other.bleu,
            self.meteor_sum + other.meteor_sum,
            self.precision_sum + other.precision_sum,
            self.recall_sum + other.recall_sum,
            self.matches + other.matches,
            self.chunks + other.chunks,
            self.ter_edits + other.ter_edits,
            self.ter_ref_len + other.ter_ref_len,
            self.entry_count + other.entry_count,
        )

    @classmethod
    def of(cls, entry: EntryScores) -> "CorpusTotals":
        m = entry.meteor
        return cls(
            entry.bleu,
            Fraction(m.value),
            Fraction(m.precision),
            Fraction(m.recall),
            m.matches,
            m.chunks,
            entry.ter_edits,
            entry.ter_ref_len,
            1,
        )


def sum_totals(parts: Iterable[CorpusTotals]) -> CorpusTotals:
    total = CorpusTotals()
    for part in parts:
        total = total + part
    return total


@dataclass(frozen=True)
class MetricReport:
    """Aggregate scores of one evaluation run.

    ``meteor`` holds the mean of per-entry values (precision and recall
    are means too; matches and chunks are totals). ``ter.avg_ref_len`` is
    the sum of per-entry mean reference lengths, the denominator of the
    length-weighted corpus TER.
    """

    bleu: BleuScore
    meteor: MeteorScore
    ter: TerScore
    entry_count: int
    totals: CorpusTotals

    @classmethod
    def from_totals(cls, totals: CorpusTotals) -> "MetricReport":
        n = totals.entry_count
        if n < 1:
            raise MetricError("empty corpus")
        meteor_agg = MeteorScore(
            float(totals.meteor_sum / n),
            float(totals.precision_sum / n),
            float(totals.recall_sum / n),
            totals.matches,
            totals.chunks,
        )
        ter_agg = TerScore(
            float(100 * totals.ter_edits / totals.ter_ref_len),
            totals.ter_edits,
            float(totals.ter_ref_len),
        )
        return cls(score_from_stats(totals.bleu), meteor_agg, ter_agg, n, totals)

    def as_dict(self) -> dict:
        return {
            "entry_count": self.entry_count,
            "bleu": self.bleu.value,
            "bleu_precisions": list(self.bleu.precisions),
            "bleu_brevity_penalty": self.bleu.brevity_penalty,
            "bleu_hyp_len": self.bleu.hyp_len,
            "bleu_ref_len": self.bleu.eff_ref_len,
            "meteor": self.meteor.value,
            "meteor_precision": self.meteor.precision,
            "meteor_recall": self.meteor.recall,
            "meteor_matches": self.meteor.matches,
            "meteor_chunks": self.meteor.chunks,
            "ter": self.ter.value,
            "ter_edits": self.ter.edits,
            "ter_ref_len": self.ter.avg_ref_len,
        }


def evaluate(pairs: Iterable[tuple[TokenSeq, Iterable[TokenSeq]]]) -> MetricReport:
    """Score every (hypothesis, references) pair and aggregate."""
    return MetricReport.from_totals(
        sum_totals(CorpusTotals.of(score_entry(h, refs)) for h, refs in pairs)
    )

"""Multi-reference BLEU-4, corpus-level and smoothed sentence-level."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..text_core import TokenSeq
from .errors import MetricError, check_references

MAX_ORDER = 4


@dataclass(frozen=True)
class BleuStats:
    """Additive sufficient statistics for BLEU over any number of pairs."""

    matches: tuple[int, ...] = (0,) * MAX_ORDER
    totals: tuple[int, ...] = (0,) * MAX_ORDER
    hyp_len: int = 0
    ref_len: int = 0

    def __add__(self, other: "BleuStats") -> "BleuStats":
        return BleuStats(
            tuple(a + b for a, b in zip(self.matches, other.matches)),
            tuple(a + b for a, b in zip(self.totals, other.totals)),
            self.hyp_len + other.hyp_len,
            self.ref_len + other.ref_len,
        )


@dataclass(frozen=True)
class BleuScore:
    value: float
    precisions: tuple[float, ...]
    brevity_penalty: float
    hyp_len: int
    eff_ref_len: int


def ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def effective_ref_length(hyp_len: int, ref_lens: Iterable[int]) -> int:
    """Reference length closest to ``hyp_len``; ties go to the shorter one."""
    return min(ref_lens, key=lambda r: (abs(r - hyp_len), r))


def bleu_stats(hypothesis: TokenSeq, references: Iterable[TokenSeq]) -> BleuStats:
    refs = check_references(references)
    matches = []
    totals = []
    for n in range(1, MAX_ORDER + 1):
        hyp_counts = ngrams(hypothesis, n)
        max_ref: Counter = Counter()
        for ref in refs:
            max_ref |= ngrams(ref, n)
        matches.append(sum(min(c, max_ref[g]) for g, c in hyp_counts.items()))
        totals.append(max(len(hypothesis) - n + 1, 0))
    ref_len = effective_ref_length(len(hypothesis), (len(r) for r in refs))
    return BleuStats(tuple(matches), tuple(totals), len(hypothesis), ref_len)


def brevity_penalty(hyp_len: int, ref_len: int) -> float:
    if hyp_len >= ref_len:
        return 1.0
    if hyp_len == 0:
        return 0.0
    return math.exp(1.0 - ref_len / hyp_len)


def score_from_stats(stats: BleuStats) -> BleuScore:
    """Unsmoothed BLEU-4 on the 0-100 scale."""
    precisions = tuple(
        m / t if t else 0.0 for m, t in zip(stats.matches, stats.totals)
    )
    bp = brevity_penalty(stats.hyp_len, stats.ref_len)
    if min(precisions) == 0.0:
        value = 0.0
    else:
        value = 100.0 * bp * math.exp(
            sum(math.log(p) for p in precisions) / MAX_ORDER
        )
    return BleuScore(value, precisions, bp, stats.hyp_len, stats.ref_len)


def bleu_corpus(
    pairs: Iterable[tuple[TokenSeq, Iterable[TokenSeq]]],
) -> BleuScore:
    """Corpus BLEU: n-gram counts are summed over all pairs first."""
    total = BleuStats()
    seen = False
    for hypothesis, references in pairs:
        total = total + bleu_stats(hypothesis, references)
        seen = True
    if not seen:
        raise MetricError("empty corpus")
    return score_from_stats(total)


def bleu_sentence(hypothesis: TokenSeq, references: Iterable[TokenSeq]) -> BleuScore:
    """Sentence BLEU on the 0-1 scale.

    Add-one smoothing is applied to matches and totals of orders 2-4 only,
    so a single-token hypothesis identical to a reference still scores 1.
    """
    stats = bleu_stats(hypothesis, references)
    precisions = [stats.matches[0] / stats.totals[0] if stats.totals[0] else 0.0]
    for m, t in zip(stats.matches[1:], stats.totals[1:]):
        precisions.append((m + 1) / (t + 1))
    bp = brevity_penalty(stats.hyp_len, stats.ref_len)
    if precisions[0] == 0.0:
        value = 0.0
    else:
        value = bp * math.exp(sum(math.log(p) for p in precisions) / MAX_ORDER)
    return BleuScore(value, tuple(precisions), bp, stats.hyp_len, stats.ref_len)

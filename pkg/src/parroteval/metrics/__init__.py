"""Multi-reference BLEU, METEOR and TER."""

from .bleu import BleuScore, BleuStats, bleu_corpus, bleu_sentence, bleu_stats
from .errors import MetricError
from .meteor import MeteorScore, meteor
from .oracle import ter_oracle
from .report import CorpusTotals, EntryScores, MetricReport, evaluate, score_entry
from .ter import TerScore, shift_edits, ter

__all__ = [
    "BleuScore", "BleuStats", "bleu_corpus", "bleu_sentence", "bleu_stats",
    "MetricError", "MeteorScore", "meteor", "ter_oracle", "CorpusTotals",
    "EntryScores", "MetricReport", "evaluate", "score_entry", "TerScore",
    "shift_edits", "ter",
]

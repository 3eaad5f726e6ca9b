"""Parroting baselines and multi-reference metrics for paraphrase evaluation."""

__version__ = "0.1.0"

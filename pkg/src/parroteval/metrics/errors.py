from __future__ import annotations

from typing import Iterable

from ..text_core import TokenSeq


class MetricError(ValueError):
    """Raised for inputs a metric cannot score."""


def check_references(references: Iterable[TokenSeq]) -> tuple[TokenSeq, ...]:
    refs = tuple(tuple(r) for r in references)
    if not refs:
        raise MetricError("entry without references")
    return refs

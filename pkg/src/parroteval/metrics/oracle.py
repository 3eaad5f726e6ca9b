"""Exhaustive shift-augmented edit distance for tiny inputs (test oracle)."""

from __future__ import annotations

from collections import Counter

from ..text_core import TokenSeq
from .errors import MetricError

MAX_DEPTH = 3


def _edit_distance(a: TokenSeq, b: TokenSeq) -> int:
    # plain recursive-table Levenshtein, kept separate from the metric code
    table = {(i, 0): i for i in range(len(a) + 1)}
    table.update({(0, j): j for j in range(len(b) + 1)})
    for i in range(1, len(a) + 1):
        for j in range(1, len(b) + 1):
            table[i, j] = min(
                table[i - 1, j] + 1,
                table[i, j - 1] + 1,
                table[i - 1, j - 1] + (0 if a[i - 1] == b[j - 1] else 1),
            )
    return table[len(a), len(b)]


def _one_shift_neighbours(seq: TokenSeq):
    # any block move equals swapping two adjacent blocks seq[i:j], seq[j:k]
    n = len(seq)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n + 1):
                yield seq[:i] + seq[j:k] + seq[i:j] + seq[k:]


def ter_oracle(hypothesis: TokenSeq, reference: TokenSeq, max_len: int = 8) -> int:
    """Minimum of ``shifts + levenshtein`` over every sequence of at most
    three block shifts (any span, any destination)."""
    hyp, ref = tuple(hypothesis), tuple(reference)
    if max_len > 8:
        raise MetricError("oracle supports max_len <= 8")
    if len(hyp) > max_len or len(ref) > max_len:
        raise MetricError(f"inputs exceed max_len={max_len}")
    # shifts permute the hypothesis, so this bound holds at every depth
    overlap = sum((Counter(hyp) & Counter(ref)).values())
    lower = max(len(hyp), len(ref)) - overlap

    best = _edit_distance(hyp, ref)
    seen = {hyp}
    frontier = [hyp]
    for depth in range(1, MAX_DEPTH + 1):
        if depth + lower >= best:
            break
        nxt = []
        for seq in frontier:
            for moved in _one_shift_neighbours(seq):
                if moved in seen:
                    continue
                seen.add(moved)
                nxt.append(moved)
                best = min(best, depth + _edit_distance(moved, ref))
        frontier = nxt
    return best

"""Translation Edit Rate with greedy block shifts.

The shift search follows the usual tercom scheme: a hypothesis span may
move only if it matches a reference span exactly, some hypothesis word in
it is currently misaligned, some reference word in the target span is
currently misaligned, and the move is to a position next to where the
reference span is aligned. The shift that most reduces the Levenshtein
distance is taken; the loop stops when none reduces it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from ..text_core import TokenSeq
from .errors import MetricError, check_references


@dataclass(frozen=True)
class TerScore:
    value: float
    edits: int
    avg_ref_len: float


def levenshtein(hyp: TokenSeq, ref: TokenSeq) -> int:
    """Word-level edit distance with unit insert/delete/substitute costs."""
    prev = list(range(len(ref) + 1))
    for i, h in enumerate(hyp, 1):
        cur = [i]
        for j, r in enumerate(ref, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (h != r)))
        prev = cur
    return prev[-1]


def _alignment(hyp: TokenSeq, ref: TokenSeq):
    """Edit distance plus a minimal alignment.

    Returns ``(distance, ref_to_hyp, hyp_err, ref_err)`` where
    ``ref_to_hyp`` maps each reference index to the hypothesis index it is
    aligned with (or the one just before an insertion) and the ``*_err``
    flags mark words that are not exact matches.
    """
    n, m = len(hyp), len(ref)
    dist = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        dist[i][0] = i
    for j in range(m + 1):
        dist[0][j] = j
    for i in range(1, n + 1):
        row, up = dist[i], dist[i - 1]
        h = hyp[i - 1]
        for j in range(1, m + 1):
            row[j] = min(up[j] + 1, row[j - 1] + 1, up[j - 1] + (h != ref[j - 1]))

    ref_to_hyp: dict[int, int] = {}
    hyp_err = [True] * n
    ref_err = [True] * m
    i, j = n, m
    while i > 0 or j > 0:
        if i > 0 and j > 0 and dist[i][j] == dist[i - 1][j - 1] + (hyp[i - 1] != ref[j - 1]):
            if hyp[i - 1] == ref[j - 1]:
                hyp_err[i - 1] = ref_err[j - 1] = False
            ref_to_hyp[j - 1] = i - 1
            i, j = i - 1, j - 1
        elif i > 0 and dist[i][j] == dist[i - 1][j] + 1:
            i -= 1
        else:
            # reference word with no hypothesis counterpart
            ref_to_hyp[j - 1] = i - 1
            j -= 1
    return dist[n][m], ref_to_hyp, hyp_err, ref_err


def _matching_spans(hyp: TokenSeq, ref: TokenSeq):
    """Yield ``(hyp_start, ref_start, length)`` for every exact span match."""
    for hs in range(len(hyp)):
        for rs in range(len(ref)):
            length = 0
            while (
                hs + length < len(hyp)
                and rs + length < len(ref)
                and hyp[hs + length] == ref[rs + length]
            ):
                length += 1
                yield hs, rs, length


def perform_shift(words: TokenSeq, start: int, length: int, target: int) -> TokenSeq:
    """Move ``words[start:start+length]`` so it lands before ``words[target]``."""
    block = words[start:start + length]
    if target < start:
        return words[:target] + block + words[target:start] + words[start + length:]
    if target > start + length:
        return words[:start] + words[start + length:target] + block + words[target:]
    return (
        words[:start]
        + words[start + length:length + target]
        + block
        + words[length + target:]
    )


def _best_shift(hyp: TokenSeq, ref: TokenSeq, cache: dict):
    distance, ref_to_hyp, hyp_err, ref_err = _alignment(hyp, ref)
    best = None
    for hs, rs, length in _matching_spans(hyp, ref):
        if not any(hyp_err[hs:hs + length]):
            continue
        if not any(ref_err[rs:rs + length]):
            continue
        if hs <= ref_to_hyp[rs] < hs + length:
            continue
        prev_target = None
        for offset in range(-1, length):
            if rs + offset == -1:
                target = 0
            elif rs + offset in ref_to_hyp:
                target = ref_to_hyp[rs + offset] + 1
            else:
                break
            if target == prev_target:
                continue
            prev_target = target
            shifted = perform_shift(hyp, hs, length, target)
            if shifted not in cache:
                cache[shifted] = levenshtein(shifted, ref)
            # prefer bigger gain, then longer span, then leftmost start/target
            candidate = (distance - cache[shifted], length, -hs, -target, shifted)
            if best is None or candidate > best:
                best = candidate
    return distance, best


def shift_edits(hypothesis: TokenSeq, reference: TokenSeq) -> int:
    """Greedy shift-augmented edit count of ``hypothesis`` against one reference."""
    hyp = tuple(hypothesis)
    ref = tuple(reference)
    shifts = 0
    cache: dict = {}
    while True:
        distance, best = _best_shift(hyp, ref, cache)
        if best is None or best[0] <= 0:
            return shifts + distance
        shifts += 1
        hyp = best[-1]


def ter_parts(hypothesis: TokenSeq, references: Iterable[TokenSeq]) -> tuple[int, Fraction]:
    """Minimum edit count over references and the exact mean reference length."""
    refs = check_references(references)
    if not any(refs):
        raise MetricError("degenerate reference set")
    edits = min(shift_edits(hypothesis, ref) for ref in refs)
    return edits, Fraction(sum(len(r) for r in refs), len(refs))


def ter(hypothesis: TokenSeq, references: Iterable[TokenSeq]) -> TerScore:
    edits, avg_len = ter_parts(hypothesis, references)
    return TerScore(float(100 * edits / avg_len), edits, float(avg_len))

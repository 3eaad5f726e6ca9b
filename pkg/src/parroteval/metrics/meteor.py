"""METEOR with exact and Porter-stem matching stages.

Parameters are the classic defaults (alpha=0.9, beta=3.0, gamma=0.5).
There is no synonym or paraphrase-table stage.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Iterable

from ..text_core import TokenSeq, stem
from .errors import check_references

ALPHA = 0.9
BETA = 3.0
GAMMA = 0.5

# above this many joint subset choices the crossing search turns local
_EXHAUSTIVE_LIMIT = 1024

Link = tuple[int, int]


@dataclass(frozen=True)
class MeteorScore:
    value: float
    precision: float
    recall: float
    matches: int
    chunks: int


def _crossings(links: list[Link], against: list[Link]) -> int:
    return sum(
        1 for a, b in links for c, d in against if (a - c) * (b - d) < 0
    )


def _self_crossings(links: list[Link]) -> int:
    return sum(
        1
        for i, (a, b) in enumerate(links)
        for c, d in links[i + 1:]
        if (a - c) * (b - d) < 0
    )


def _group_options(hyp_idx: list[int], ref_idx: list[int]) -> list[list[Link]]:
    """Every maximum matching of one key, each kept order-preserving."""
    k = min(len(hyp_idx), len(ref_idx))
    if len(hyp_idx) == len(ref_idx):
        return [list(zip(hyp_idx, ref_idx))]
    if len(hyp_idx) > k:
        return [list(zip(c, ref_idx)) for c in itertools.combinations(hyp_idx, k)]
    return [list(zip(hyp_idx, c)) for c in itertools.combinations(ref_idx, k)]


def _stage(
    hyp: TokenSeq,
    ref: TokenSeq,
    key: Callable[[str], str],
    fixed: list[Link],
) -> list[Link]:
    """Maximum one-to-one matching of leftover tokens under ``key``.

    Among maximum matchings, picks one with fewest crossing links (counted
    against ``fixed`` too), then fewest chunks. Exhaustive when the number of joint choices is
    small, otherwise coordinate descent from the locally best choices.
    """
    used_h = {h for h, _ in fixed}
    used_r = {r for _, r in fixed}
    by_key_h: dict[str, list[int]] = defaultdict(list)
    by_key_r: dict[str, list[int]] = defaultdict(list)
    for i, tok in enumerate(hyp):
        if i not in used_h:
            by_key_h[key(tok)].append(i)
    for j, tok in enumerate(ref):
        if j not in used_r:
            by_key_r[key(tok)].append(j)

    groups = [
        _group_options(by_key_h[k], by_key_r[k])
        for k in sorted(by_key_h)
        if k in by_key_r
    ]
    if not groups:
        return []

    def cost(choice: tuple[list[Link], ...]) -> tuple[int, int, list[Link]]:
        # fewest crossings; ties go to fewer chunks, then the smallest link list
        links = sorted(itertools.chain.from_iterable(choice))
        crossings = _self_crossings(links) + _crossings(links, fixed)
        return crossings, count_chunks(links + fixed), links

    n_joint = 1
    for options in groups:
        n_joint *= len(options)
        if n_joint > _EXHAUSTIVE_LIMIT:
            break
    if n_joint <= _EXHAUSTIVE_LIMIT:
        return min(cost(choice) for choice in itertools.product(*groups))[2]

    choice = [min(opts, key=lambda o: (_crossings(o, fixed), o)) for opts in groups]
    best = cost(tuple(choice))
    improved = True
    while improved:
        improved = False
        for g, options in enumerate(groups):
            for option in options:
                trial = choice[:g] + [option] + choice[g + 1:]
                candidate = cost(tuple(trial))
                if candidate < best:
                    best, choice, improved = candidate, trial, True
    return best[2]


def align(hypothesis: TokenSeq, reference: TokenSeq) -> list[Link]:
    """Exact-match stage then stem-match stage; links sorted by hypothesis index."""
    links = _stage(hypothesis, reference, lambda t: t, [])
    links = links + _stage(hypothesis, reference, stem, links)
    return sorted(links)


def count_chunks(links: list[Link]) -> int:
    if not links:
        return 0
    links = sorted(links)
    chunks = 1
    for (h0, r0), (h1, r1) in zip(links, links[1:]):
        if h1 != h0 + 1 or r1 != r0 + 1:
            chunks += 1
    return chunks


def meteor_single(hypothesis: TokenSeq, reference: TokenSeq) -> MeteorScore:
    links = align(hypothesis, reference)
    matches = len(links)
    if matches == 0:
        return MeteorScore(0.0, 0.0, 0.0, 0, 0)
    precision = matches / len(hypothesis)
    recall = matches / len(reference)
    fmean = precision * recall / (ALPHA * precision + (1 - ALPHA) * recall)
    chunks = count_chunks(links)
    penalty = GAMMA * (chunks / matches) ** BETA
    return MeteorScore(100.0 * fmean * (1 - penalty), precision, recall, matches, chunks)


def meteor(hypothesis: TokenSeq, references: Iterable[TokenSeq]) -> MeteorScore:
    """Best single-reference METEOR over the reference set."""
    refs = check_references(references)
    hypothesis = tuple(hypothesis)
    scored = [(meteor_single(hypothesis, ref), ref) for ref in refs]
    # ties resolved on the reference text so reordering refs cannot matter
    best, _ = max(
        scored, key=lambda p: (p[0].value, p[0].matches, -p[0].chunks, p[1])
    )
    return best

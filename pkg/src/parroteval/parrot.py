"""Full and partial parroting of an input sentence."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable

from .text_core import TokenSeq

MODES = ("full", "cut", "replace")
POSITIONS = ("head", "tail", "random")
OOV_PREFIX = "oov"


class ParrotError(ValueError):
    pass


@dataclass(frozen=True)
class ParrotConfig:
    mode: str = "full"
    position: str = "head"
    ratio: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ParrotError(f"unknown mode {self.mode!r}")
        if self.position not in POSITIONS:
            raise ParrotError(f"unknown position {self.position!r}")
        if not 0.0 <= self.ratio <= 1.0:
            raise ParrotError(f"ratio must lie in [0, 1], got {self.ratio}")
        if not 0 <= self.seed < 2**64:
            raise ParrotError("seed must be an unsigned 64-bit integer")
        if self.mode == "full" and self.ratio != 0.0:
            object.__setattr__(self, "ratio", 0.0)


@dataclass(frozen=True)
class ParrotOutput:
    output: TokenSeq
    modified_ratio: float
    modified_positions: frozenset[int]


def full_parrot(input: TokenSeq) -> ParrotOutput:
    return ParrotOutput(tuple(input), 0.0, frozenset())


def modified_count(ratio: float, length: int) -> int:
    """``ratio * length`` rounded half up.

    The product is first rounded to 9 decimals so grid ratios such as
    ``0.1 * 3`` (0.30000000000000004) do not tip over a half boundary.
    """
    return min(length, math.floor(round(ratio * length, 9) + 0.5))


def entry_rng(seed: int, entry_index: int) -> random.Random:
    """Mersenne Twister keyed by (seed, entry index).

    Seeding from a string goes through SHA-512, which is stable across
    platforms and Python versions.
    """
    return random.Random(f"parrot:{seed}:{entry_index}")


def select_positions(length: int, k: int, position: str, rng: random.Random) -> list[int]:
    if position == "head":
        return list(range(k))
    if position == "tail":
        return list(range(length - k, length))
    return sorted(rng.sample(range(length), k))


def oov_tokens(count: int, taken: Iterable[TokenSeq]) -> list[str]:
    """``count`` fresh tokens ``oov0, oov1, ...`` absent from every sequence in ``taken``."""
    vocab = {tok for seq in taken for tok in seq}
    out = []
    counter = 0
    while len(out) < count:
        candidate = f"{OOV_PREFIX}{counter}"
        counter += 1
        if candidate not in vocab:
            out.append(candidate)
    return out


def partial_parrot(
    input: TokenSeq,
    references: Iterable[TokenSeq],
    config: ParrotConfig,
    entry_index: int = 0,
) -> ParrotOutput:
    """Cut or replace ``round(ratio * len)`` input tokens.

    Replacement tokens are distinct and absent from both the input and
    every reference.
    """
    if config.mode == "full":
        raise ParrotError("not a partial mode")
    tokens = tuple(input)
    refs = tuple(references)
    if config.mode == "replace" and not refs:
        raise ParrotError("replace mode needs references")
    n = len(tokens)
    k = modified_count(config.ratio, n)
    rng = entry_rng(config.seed, entry_index)
    chosen = select_positions(n, k, config.position, rng)
    chosen_set = frozenset(chosen)

    if config.mode == "cut":
        output = tuple(t for i, t in enumerate(tokens) if i not in chosen_set)
    else:
        fresh = iter(oov_tokens(k, (tokens,) + refs))
        output = tuple(next(fresh) if i in chosen_set else t for i, t in enumerate(tokens))
    return ParrotOutput(output, k / n if n else 0.0, chosen_set)


def apply(
    input: TokenSeq,
    references: Iterable[TokenSeq],
    config: ParrotConfig,
    entry_index: int = 0,
) -> ParrotOutput:
    """Dispatch on ``config.mode``."""
    if config.mode == "full":
        return full_parrot(input)
    return partial_parrot(input, references, config, entry_index)

"""Paraphrase corpora: dataset adapters, reference grouping and statistics.

Raw datasets (Quora question pairs, Twitter URL corpus, MSCOCO captions)
are turned into ``Corpus`` objects, which round-trip through a JSON-lines
file of ``{"id", "input", "references"}`` records.
"""

from __future__ import annotations

import csv
import json
import logging
import random
import re
import sys
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Iterator, Optional

from .text_core import TokenSeq, detokenize, prepare

log = logging.getLogger(__name__)

SOURCES = ("quora", "twitter", "mscoco", "generic")


class CorpusError(ValueError):
    pass


class EmptyCorpusError(CorpusError):
    pass


@dataclass(frozen=True)
class ParaphraseEntry:
    id: str
    input: TokenSeq
    references: tuple[TokenSeq, ...]
    raw_input: str = ""

    def __post_init__(self):
        if not self.references:
            raise CorpusError(f"entry {self.id!r} has no references")
        if self.input in self.references:
            raise CorpusError(f"entry {self.id!r} lists itself as a reference")
        if len(set(self.references)) != len(self.references):
            raise CorpusError(f"entry {self.id!r} has duplicate references")

    @property
    def single_reference(self) -> bool:
        return len(self.references) == 1


@dataclass(frozen=True)
class ReferenceHistogram:
    buckets: dict[int, int]
    total_entries: int

    @property
    def percentages(self) -> dict[int, float]:
        return {k: 100.0 * v / self.total_entries for k, v in self.buckets.items()}


@dataclass
class Corpus:
    entries: list[ParaphraseEntry]
    source: str = "generic"
    skipped_records: int = 0
    stats: ReferenceHistogram = field(init=False)

    def __post_init__(self):
        ids = [e.id for e in self.entries]
        if len(set(ids)) != len(ids):
            raise CorpusError("entry ids are not unique")
        self.stats = histogram(self)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[ParaphraseEntry]:
        return iter(self.entries)

    def by_id(self, entry_id: str) -> ParaphraseEntry:
        for entry in self.entries:
            if entry.id == entry_id:
                return entry
        raise KeyError(entry_id)

    def filter(self, min_refs: int = 1) -> "Corpus":
        kept = [e for e in self.entries if len(e.references) >= min_refs]
        if not kept:
            raise EmptyCorpusError("zero entries")
        return Corpus(kept, self.source)


def histogram(corpus: Corpus) -> ReferenceHistogram:
    counts = Counter(len(e.references) for e in corpus.entries)
    return ReferenceHistogram(dict(sorted(counts.items())), len(corpus.entries))


class _Grouper:
    """Collects direct paraphrase links between distinct sentences."""

    def __init__(self, source: str):
        self.source = source
        self.raw: dict[TokenSeq, str] = {}
        self.refs: dict[TokenSeq, dict[TokenSeq, None]] = {}

    def _note(self, tokens: TokenSeq, raw: str) -> None:
        if tokens not in self.raw:
            self.raw[tokens] = raw
            self.refs[tokens] = {}

    def link(self, a_raw: str, b_raw: str) -> None:
        a, b = prepare(a_raw), prepare(b_raw)
        if not a or not b or a == b:
            return
        self._note(a, a_raw)
        self._note(b, b_raw)
        self.refs[a][b] = None
        self.refs[b][a] = None

    def corpus(self, skipped: int) -> Corpus:
        entries = []
        for n, (tokens, refs) in enumerate(self.refs.items()):
            if refs:
                entries.append(
                    ParaphraseEntry(
                        f"{self.source}-{n:07d}", tokens, tuple(refs), self.raw[tokens]
                    )
                )
        if not entries:
            raise EmptyCorpusError("zero entries")
        if skipped:
            log.warning("skipped %d unreadable records", skipped)
        return Corpus(entries, self.source, skipped)


Record = tuple[str, str, bool]


def ingest_pairs(records: Iterable[Optional[Record]], source: str = "generic") -> Corpus:
    """Group positive sentence pairs into entries.

    Each distinct sentence becomes one entry whose references are all
    sentences directly paired with it (both directions). Negative pairs,
    self-pairs and duplicate pairs contribute nothing. ``None`` records
    stand for unreadable input rows and are counted as skipped.
    """
    grouper = _Grouper(source)
    skipped = 0
    for record in records:
        if record is None:
            skipped += 1
            continue
        a, b, positive = record
        if positive:
            grouper.link(a, b)
    return grouper.corpus(skipped)


def ingest_captions(records: Iterable[tuple[str, str]], source: str = "mscoco") -> Corpus:
    """Treat captions of the same image as mutual paraphrases."""
    by_image: dict[str, list[str]] = {}
    for image_id, caption in records:
        by_image.setdefault(str(image_id), []).append(caption)
    grouper = _Grouper(source)
    for captions in by_image.values():
        for i, a in enumerate(captions):
            for b in captions[i + 1:]:
                grouper.link(a, b)
    return grouper.corpus(0)


def sample_test_set(corpus: Corpus, size: int, seed: int) -> Corpus:
    """Uniform sample of ``size`` entries without replacement, kept in corpus order."""
    if size < 1:
        raise CorpusError("sample size must be at least 1")
    if size > len(corpus):
        raise CorpusError(f"sample size {size} exceeds corpus size {len(corpus)}")
    picked = sorted(random.Random(f"sample:{seed}").sample(range(len(corpus)), size))
    return Corpus([corpus.entries[i] for i in picked], corpus.source)


# --- raw dataset adapters ---------------------------------------------------


def _raise_csv_limit() -> None:
    limit = sys.maxsize
    while True:
        try:
            csv.field_size_limit(limit)
            return
        except OverflowError:
            limit //= 10


def read_quora(path: Path) -> Iterator[Optional[Record]]:
    """Rows of the Quora question-pairs TSV (id, qid1, qid2, question1, question2, is_duplicate)."""
    _raise_csv_limit()
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh, delimiter="\t")
        for row in reader:
            q1, q2, label = row.get("question1"), row.get("question2"), row.get("is_duplicate")
            if q1 is None or q2 is None or label not in ("0", "1"):
                yield None
                continue
            yield q1, q2, label == "1"


_LEADING_INT = re.compile(r"\(?\s*(\d+)")


def twitter_label(label: str, threshold: int = 4) -> Optional[bool]:
    """Map a Twitter URL-corpus label to positive/negative.

    ``"(5, 6)"`` style vote counts and bare numbers are positive at or above
    ``threshold``; ``"1"``/``"paraphrase"`` and ``"0"``/``"non-paraphrase"``
    are read literally. Returns ``None`` for unparseable labels.
    """
    text = label.strip().lower()
    if text in ("paraphrase", "true"):
        return True
    if text in ("non-paraphrase", "false"):
        return False
    if text == "1":
        return True
    if text == "0":
        return False
    m = _LEADING_INT.match(text)
    if not m:
        return None
    return int(m.group(1)) >= threshold


def read_twitter(
    path: Path, label_fn: Callable[[str], Optional[bool]] = twitter_label
) -> Iterator[Optional[Record]]:
    """Rows of a Twitter URL-corpus TSV: sentence1, sentence2, label[, url]."""
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line.strip():
                continue
            cols = line.split("\t")
            if len(cols) < 3:
                yield None
                continue
            positive = label_fn(cols[2])
            if positive is None:
                yield None
                continue
            yield cols[0], cols[1], positive


def read_mscoco(path: Path) -> list[tuple[str, str]]:
    """(image_id, caption) records from a COCO captions annotation file."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    try:
        return [(str(a["image_id"]), a["caption"]) for a in doc["annotations"]]
    except (KeyError, TypeError) as exc:
        raise CorpusError(f"{path}: not a COCO captions file ({exc})") from None


def load_raw(path: Path, source: str, twitter_threshold: int = 4) -> Corpus:
    if source == "quora":
        return ingest_pairs(read_quora(path), "quora")
    if source == "twitter":
        return ingest_pairs(
            read_twitter(path, lambda s: twitter_label(s, twitter_threshold)), "twitter"
        )
    if source == "mscoco":
        return ingest_captions(read_mscoco(path))
    if source == "generic":
        return read_jsonl(path)
    raise CorpusError(f"unknown source {source!r}")


# --- normalized JSON-lines format ------------------------------------------


def write_jsonl(corpus: Corpus, path: Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for e in corpus.entries:
            record = {
                "id": e.id,
                "input": detokenize(e.input),
                "references": [detokenize(r) for r in e.references],
            }
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def read_jsonl(path: Path, source: str = "generic") -> Corpus:
    """Load a normalized corpus file; malformed lines are skipped and counted."""
    entries = []
    skipped = 0
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                tokens = prepare(rec["input"])
                refs = tuple(dict.fromkeys(prepare(r) for r in rec["references"]))
                refs = tuple(r for r in refs if r and r != tokens)
                entries.append(ParaphraseEntry(str(rec["id"]), tokens, refs, rec["input"]))
            except (ValueError, KeyError, TypeError):
                skipped += 1
    if skipped:
        log.warning("skipped %d unreadable records in %s", skipped, path)
    if not entries:
        raise EmptyCorpusError("zero entries")
    return Corpus(entries, source, skipped)

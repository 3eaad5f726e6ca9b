import random

import pytest

from parroteval.corpus import Corpus, ParaphraseEntry


def toks(text):
    return tuple(text.split())


def make_corpus(rows, source="generic"):
    """rows: (input, [refs...]) strings of space-separated tokens."""
    return Corpus(
        [ParaphraseEntry(f"e{i}", toks(inp), tuple(toks(r) for r in refs), inp)
         for i, (inp, refs) in enumerate(rows)],
        source,
    )


def random_corpus(n, seed=0, vocab="abcdefghij", max_refs=4):
    rng = random.Random(seed)
    rows = []
    for _ in range(n):
        inp = [rng.choice(vocab) for _ in range(rng.randint(1, 9))]
        refs = {}
        for _ in range(rng.randint(1, max_refs)):
            ref = list(inp)
            for _ in range(rng.randint(1, 3)):
                op = rng.random()
                if op < 0.4 and ref:
                    ref[rng.randrange(len(ref))] = rng.choice(vocab)
                elif op < 0.7:
                    ref.insert(rng.randint(0, len(ref)), rng.choice(vocab))
                elif len(ref) > 1:
                    del ref[rng.randrange(len(ref))]
            if ref != inp:
                refs[" ".join(ref)] = None
        if refs:
            rows.append((" ".join(inp), list(refs)))
    return make_corpus(rows)


@pytest.fixture
def small_corpus():
    return random_corpus(60, seed=3)


def pytest_addoption(parser):
    group = parser.getgroup("datasets", "raw datasets for the dataset-dependent acceptance tier")
    group.addoption("--quora", default=None, help="Quora question-pairs TSV")
    group.addoption("--twitter", default=None, help="Twitter URL-corpus TSV")
    group.addoption("--mscoco", default=None, help="MSCOCO captions annotation JSON (test split)")
    group.addoption("--workers", type=int, default=1, help="processes for dataset-tier scoring")


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import VERDICTS

    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(VERDICTS):
        status, detail = VERDICTS[number]
        terminalreporter.write_line(f"criterion {number:>2}: {status:<4} {detail}")

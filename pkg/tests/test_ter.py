import random

import pytest
from hypothesis import given, settings, strategies as st

from parroteval.metrics import MetricError, shift_edits, ter, ter_oracle
from parroteval.metrics.ter import levenshtein, perform_shift

from conftest import toks

seq8 = st.lists(st.sampled_from("abcde"), min_size=0, max_size=8).map(tuple)
nonempty8 = st.lists(st.sampled_from("abcde"), min_size=1, max_size=8).map(tuple)


def test_identity():
    score = ter(toks("a b c"), [toks("x y"), toks("a b c")])
    assert score.edits == 0 and score.value == 0.0


def test_single_deletion():
    score = ter(toks("a b c"), [toks("a c")])
    assert (score.edits, score.avg_ref_len, score.value) == (1, 2.0, 50.0)


def test_single_block_shift():
    score = ter(toks("a c d b"), [toks("a b c d")])
    assert (score.edits, score.value) == (1, 25.0)


def test_multiword_block_shift():
    # moving "d e f" in front costs one shift; Levenshtein alone needs 6
    hyp, ref = toks("a b c d e f"), toks("d e f a b c")
    assert levenshtein(hyp, ref) == 6
    assert shift_edits(hyp, ref) == 1


def test_average_reference_length_normalizer():
    score = ter(toks("a b"), [toks("a b c d"), toks("a b c d e f")])
    assert score.edits == 2
    assert score.avg_ref_len == 5.0
    assert score.value == 40.0


def test_empty_hypothesis_counts_insertions():
    score = ter((), [toks("a b c"), toks("a b c d e")])
    assert score.edits == 3
    assert score.value == pytest.approx(100 * 3 / 4)


def test_degenerate_reference_set():
    with pytest.raises(MetricError, match="degenerate reference set"):
        ter(toks("a"), [()])
    with pytest.raises(MetricError):
        ter(toks("a"), [])


def test_perform_shift():
    words = tuple("abcdef")
    assert perform_shift(words, 3, 2, 0) == tuple("deabcf")
    assert perform_shift(words, 0, 2, 5) == tuple("cdeabf")
    assert perform_shift(words, 1, 1, 3) == tuple("acbdef")


@pytest.mark.parametrize("hyp, ref, expected", [
    ("a b", "a b", 0),
    ("b a", "a b", 1),
    ("a c d b", "a b c d", 1),
    ("a b c", "a c", 1),
    ("", "a b", 2),
    ("c d a b", "a b c d", 1),
])
def test_oracle_examples(hyp, ref, expected):
    assert ter_oracle(toks(hyp), toks(ref)) == expected


def test_oracle_rejects_long_inputs():
    with pytest.raises(MetricError):
        ter_oracle(tuple("abcdefghi"), tuple("ab"))


@settings(max_examples=200, deadline=None)
@given(seq8, seq8)
def test_greedy_never_below_oracle(hyp, ref):
    assert shift_edits(hyp, ref) >= ter_oracle(hyp, ref)


@given(seq8, seq8)
def test_shifts_never_worse_than_levenshtein(hyp, ref):
    assert shift_edits(hyp, ref) <= levenshtein(hyp, ref)


@given(seq8, st.lists(nonempty8, min_size=1, max_size=3), nonempty8)
def test_adding_reference_never_increases_edits(hyp, refs, extra):
    assert ter(hyp, refs + [extra]).edits <= ter(hyp, refs).edits


@given(seq8, st.lists(nonempty8, min_size=1, max_size=4), st.randoms())
def test_reference_order_invariance(hyp, refs, rnd):
    shuffled = list(refs)
    rnd.shuffle(shuffled)
    assert ter(hyp, refs) == ter(hyp, shuffled)


@given(seq8, st.lists(nonempty8, min_size=1, max_size=3))
def test_zero_edits_iff_exact_reference(hyp, refs):
    score = ter(hyp, refs)
    assert (score.edits == 0) == (hyp in refs)
    assert score.value == pytest.approx(100 * score.edits / score.avg_ref_len)
    assert score.value >= 0


def test_levenshtein_matches_oracle_distance():
    from parroteval.metrics.oracle import _edit_distance
    rng = random.Random(1)
    for _ in range(300):
        a = tuple(rng.choice("abc") for _ in range(rng.randint(0, 7)))
        b = tuple(rng.choice("abc") for _ in range(rng.randint(0, 7)))
        assert levenshtein(a, b) == _edit_distance(a, b)

import pytest
from hypothesis import given, strategies as st

from parroteval.metrics import bleu_corpus, meteor
from parroteval.parrot import (
    ParrotConfig, ParrotError, apply, full_parrot, modified_count, partial_parrot,
)

from conftest import toks

tokens = st.lists(st.sampled_from(["a", "b", "c", "oov0", "oov1"]), min_size=0, max_size=12).map(tuple)
refs_st = st.lists(
    st.lists(st.sampled_from(["a", "b", "c", "oov0", "oov2"]), min_size=1, max_size=6).map(tuple),
    min_size=1, max_size=3,
)
configs = st.builds(
    ParrotConfig,
    mode=st.sampled_from(["cut", "replace"]),
    position=st.sampled_from(["head", "tail", "random"]),
    ratio=st.floats(0.0, 1.0),
    seed=st.integers(0, 2**64 - 1),
)


def test_full_parrot():
    out = full_parrot(("a", "b"))
    assert out.output == ("a", "b") and out.modified_ratio == 0.0
    assert out.modified_positions == frozenset()
    assert full_parrot(()).output == ()


def test_cut_head():
    out = partial_parrot(toks("a b c d"), [], ParrotConfig("cut", "head", 0.5))
    assert out.output == ("c", "d")
    assert out.modified_positions == {0, 1}
    assert out.modified_ratio == 0.5


def test_replace_tail():
    out = partial_parrot(toks("a b c d"), [toks("a b c d")], ParrotConfig("replace", "tail", 0.25))
    assert out.output == ("a", "b", "c", "oov0")


def test_replace_skips_tokens_present_in_refs_or_input():
    out = partial_parrot(toks("oov0 b"), [toks("oov1 x")], ParrotConfig("replace", "tail", 0.5))
    assert out.output == ("oov0", "oov2")


def test_ratio_zero_is_identity():
    out = partial_parrot(toks("a b c d"), [], ParrotConfig("cut", "head", 0.0))
    assert out.output == toks("a b c d")


def test_full_mode_rejected_by_partial():
    with pytest.raises(ParrotError, match="not a partial mode"):
        partial_parrot(toks("a"), [toks("b")], ParrotConfig())


def test_config_validation():
    with pytest.raises(ParrotError):
        ParrotConfig("cut", "head", 1.5)
    with pytest.raises(ParrotError):
        ParrotConfig("shuffle")
    with pytest.raises(ParrotError):
        ParrotConfig("cut", "middle")
    assert ParrotConfig("full", ratio=0.3).ratio == 0.0


@pytest.mark.parametrize("ratio, length, k", [
    (0.5, 3, 2), (0.25, 2, 1), (0.1, 4, 0), (0.3, 5, 2), (1.0, 7, 7),
    (0.1 * 3, 5, 2),  # 0.30000000000000004 * 5 still rounds half up to 2
    (0.02 * 25, 1, 1),
])
def test_modified_count_rounds_half_up(ratio, length, k):
    assert modified_count(ratio, length) == k


def test_random_positions_depend_on_entry_index():
    cfg = ParrotConfig("cut", "random", 0.5, seed=7)
    inp = tuple("abcdefghij")
    outs = {partial_parrot(inp, [], cfg, i).output for i in range(20)}
    assert len(outs) > 1
    assert partial_parrot(inp, [], cfg, 3) == partial_parrot(inp, [], cfg, 3)


def test_full_ratio_replace_scores_zero():
    inp, refs = toks("a b c d"), [toks("a b c d"), toks("b c a")]
    out = partial_parrot(inp, refs, ParrotConfig("replace", "random", 1.0))
    assert bleu_corpus([(out.output, refs)]).value == 0.0
    assert meteor(out.output, refs).value == 0.0
    assert partial_parrot(inp, refs, ParrotConfig("cut", "head", 1.0)).output == ()


@given(tokens, refs_st, configs, st.integers(0, 1000))
def test_partial_parrot_invariants(inp, refs, cfg, index):
    out = partial_parrot(inp, refs, cfg, index)
    assert out == partial_parrot(inp, refs, cfg, index)
    k = len(out.modified_positions)
    assert k == modified_count(cfg.ratio, len(inp))
    assert out.modified_ratio == (k / len(inp) if inp else 0.0)
    assert all(0 <= i < len(inp) for i in out.modified_positions)
    if cfg.mode == "cut":
        assert len(out.output) == len(inp) - k
    else:
        assert len(out.output) == len(inp)
        ref_vocab = {t for r in refs for t in r}
        for i in out.modified_positions:
            assert out.output[i] not in ref_vocab
            assert out.output[i] not in inp
    if cfg.position == "head":
        assert out.modified_positions == set(range(k))
    elif cfg.position == "tail":
        assert out.modified_positions == set(range(len(inp) - k, len(inp)))


def test_apply_dispatch():
    assert apply(toks("a b"), [toks("b")], ParrotConfig()).output == toks("a b")
    assert apply(toks("a b"), [toks("b")], ParrotConfig("cut", "tail", 0.5)).output == ("a",)

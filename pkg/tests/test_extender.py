import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpora import LATIN_SYLLABLES, SYLLABICS, agglutinative_corpus, latin_corpus, latin_words
from oracles import posterior_counts
from unigram_extend.extender import EmptyExtensionError, ExtensionConfig, extend, new_letters
from unigram_extend.lattice import encode
from unigram_extend.model import UnigramModel, export_vocab
from unigram_extend.trainer import ConfigurationError, Corpus, TrainerConfig, train

LN = math.log


@pytest.fixture(scope="module")
def original():
    return train(Corpus.from_raw(latin_corpus(400)), TrainerConfig(vocab_size=150))


@pytest.fixture(scope="module")
def extension(original):
    lines = agglutinative_corpus(300, latin_vocab=latin_words()[:50], latin_rate=0.2)
    corpus = Corpus.from_raw(lines)
    return corpus, extend(corpus, original, ExtensionConfig(additional_vocab_size=200))


def test_new_letters():
    original = UnigramModel({"a": -1.0, "b": -1.0, "▁": -1.0})
    assert new_letters(Corpus(["aXb"]), original) == {"X"}
    assert new_letters(Corpus(["ab"]), original) == set()
    assert new_letters(Corpus(["▁X"]), UnigramModel({"a": -1.0})) == {"X"}


def test_new_letters_of_syllabic_corpus(original):
    corpus = Corpus.from_raw(agglutinative_corpus(200))
    letters = new_letters(corpus, original)
    assert letters == {c for s in corpus for c in s if 0x1400 <= ord(c) <= 0x167F}


def test_extend_small_example():
    original = UnigramModel({"a": LN(0.5), "b": LN(0.5)})
    corpus = Corpus(["aXYb", "XY"])
    cfg = ExtensionConfig(additional_vocab_size=3, max_piece_len=2)
    additional, merged = extend(corpus, original, cfg)
    assert set(additional) == {"X", "Y", "XY"}
    # no pruning is needed, so the result is final_em_iters EM steps from the seed
    table = {"X": LN(2 / 6), "Y": LN(2 / 6), "XY": LN(2 / 6)}
    for _ in range(cfg.final_em_iters):
        mix = {**original.pieces, **table}
        totals = dict.fromkeys(mix, 0.0)
        for s in corpus:
            for k, v in posterior_counts(s, mix)[1].items():
                totals[k] += v
        denom = sum(totals.values())
        table = {k: LN(totals[k] / denom) for k in table}
    for k in table:
        assert additional[k] == pytest.approx(table[k], abs=1e-12)
    assert list(merged)[:2] == ["a", "b"]
    assert merged["a"] == original["a"] and merged["b"] == original["b"]
    assert encode("ab", merged, False) == encode("ab", original, False)
    assert encode("XY", merged, False).n_unknown == 0


def test_candidates_start_with_new_letter():
    original = UnigramModel({"a": LN(0.5), "b": LN(0.5)})
    cfg = ExtensionConfig(additional_vocab_size=4, max_piece_len=2, min_count=1)
    additional, _ = extend(Corpus(["aXYb", "XY"]), original, cfg)
    assert set(additional) == {"X", "Y", "XY", "Yb"}
    assert "aX" not in additional and "b" not in additional


def test_no_new_letters_error():
    with pytest.raises(EmptyExtensionError, match="no new letters"):
        extend(Corpus(["ab"]), UnigramModel({"a": -1.0, "b": -1.0}),
               ExtensionConfig(additional_vocab_size=3))


def test_budget_below_letter_count():
    with pytest.raises(ConfigurationError):
        extend(Corpus(["XYZ"]), UnigramModel({"a": -1.0}), ExtensionConfig(additional_vocab_size=2))


def test_budget_beyond_candidates():
    with pytest.raises(ConfigurationError, match="candidates"):
        extend(Corpus(["XY"]), UnigramModel({"a": -1.0}), ExtensionConfig(additional_vocab_size=50))


def test_extension_properties(original, extension):
    corpus, (additional, merged) = extension
    letters = new_letters(corpus, original)
    assert len(additional) == 200
    assert all(s[0] in letters for s in additional)
    assert letters <= {s for s in additional if len(s) == 1}
    assert export_vocab(merged).startswith(export_vocab(original))
    assert list(merged) == list(original) + list(additional)
    for s in corpus:
        assert encode(s[1:].replace("▁", " "), merged).n_unknown == 0


def test_mixed_script_tokens(original, extension):
    corpus, (additional, merged) = extension
    rng = random.Random(11)
    for _ in range(200):
        words = [rng.choice(LATIN_SYLLABLES) + "".join(rng.choices(SYLLABICS[:40], k=rng.randint(0, 4)))
                 for _ in range(rng.randint(1, 5))]
        seq = encode(" ".join(words), merged)
        for tok in seq.tokens:
            if tok in additional:
                assert tok[0] in SYLLABICS
            else:
                assert tok in original
                assert set(tok) <= original.alphabet
        if set("".join(words)) <= original.covered_chars | set(additional):
            assert seq.n_unknown == 0


script_a = st.lists(st.sampled_from(LATIN_SYLLABLES + list("0123.,? ")), max_size=15).map("".join)


@settings(max_examples=300, deadline=None)
@given(script_a)
def test_extension_invariance(original, extension, text):
    merged = extension[1].merged
    assert encode(text, merged) == encode(text, original)

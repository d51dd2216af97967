import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from unigram_extend.model import (
    ModelValidationError,
    Piece,
    UnigramModel,
    VocabFormatError,
    denormalize,
    export_vocab,
    load_model,
    normalize,
)


@pytest.mark.parametrize("raw, prefix, expected", [
    ("ab cd", True, "▁ab▁cd"),
    ("", True, ""),
    ("a  b", False, "a▁▁b"),
    ("ab", False, "ab"),
    (" a", True, "▁▁a"),
])
def test_normalize(raw, prefix, expected):
    assert normalize(raw, prefix) == expected


@pytest.mark.parametrize("tokens, expected", [
    (["▁ab", "▁cd"], "ab cd"),
    ([], ""),
    (["▁a", "▁", "▁b"], "a  b"),
])
def test_denormalize(tokens, expected):
    assert denormalize(tokens) == expected


def test_denormalize_of_normalize_double_space():
    assert normalize("a  b") == "".join(["▁a", "▁", "▁b"])


text_no_marker = st.text(alphabet=st.characters(blacklist_characters="▁", blacklist_categories=("Cs",)))


@given(text_no_marker)
def test_normalize_roundtrip(raw):
    assert denormalize([normalize(raw)]) == raw
    assert " " not in normalize(raw)


@given(text_no_marker, st.data())
def test_roundtrip_through_any_segmentation(raw, data):
    text = normalize(raw)
    cuts = sorted(data.draw(st.sets(st.integers(1, max(len(text) - 1, 1)))) if text else [])
    bounds = [0] + [c for c in cuts if c < len(text)] + [len(text)]
    tokens = [text[a:b] for a, b in zip(bounds, bounds[1:]) if b > a]
    assert denormalize(tokens) == raw


def test_piece_invariants():
    with pytest.raises(ModelValidationError):
        Piece("", -1.0)
    with pytest.raises(ModelValidationError):
        Piece("a b", -1.0)
    with pytest.raises(ModelValidationError):
        Piece("a", math.nan)
    assert Piece("▁a", -1.0).surface == "▁a"


def test_load_model_basic():
    m = load_model("a\t-0.9163\nb\t-1.2040\nab\t-1.6094\n")
    assert list(m) == ["a", "b", "ab"]
    assert m.alphabet == {"a", "b"}
    assert m["ab"] == pytest.approx(-1.6094)


def test_load_empty():
    m = load_model("")
    assert len(m) == 0
    assert m.alphabet == frozenset()


def test_load_duplicate_rejected():
    with pytest.raises(ModelValidationError, match="duplicate"):
        load_model("a\t-1.0\na\t-2.0")


@pytest.mark.parametrize("text, lineno", [
    ("a\t-1\nb -2\n", 2),
    ("a\tnope\n", 1),
    ("\t-1.0\n", 1),
])
def test_load_malformed_reports_line(text, lineno):
    with pytest.raises(VocabFormatError) as info:
        load_model(text)
    assert info.value.lineno == lineno
    assert f"line {lineno}" in str(info.value)


def test_export_vocab():
    assert export_vocab(UnigramModel({"a": -0.5})) == "a\t-0.500000\n"
    assert export_vocab(UnigramModel()) == ""
    assert export_vocab(UnigramModel({"a": 0.0})) == "a\t0.000000\n"


def test_unk_policy():
    m = UnigramModel({"a": -1.0, "b": -3.5})
    assert m.unk_log_prob == -13.5
    assert m.unk_log_prob < min(m.pieces.values())


def test_model_is_immutable_and_functional_updates():
    m = UnigramModel({"a": -1.0, "b": -2.0})
    with pytest.raises(TypeError):
        m.pieces["c"] = -1.0
    m2 = m.with_scores({"b": -0.5})
    assert m["b"] == -2.0 and m2["b"] == -0.5
    assert list(m.without(["a"])) == ["b"]
    with pytest.raises(ModelValidationError):
        m.concat(UnigramModel({"a": -1.0}))


def test_prefixes_at_uses_finite_pieces_only():
    m = UnigramModel({"a": -1.0, "ab": -2.0, "abc": -math.inf})
    assert list(m.prefixes_at("abcd", 0)) == ["a", "ab"]
    assert m.covered_chars == {"a"}


surfaces = st.text(alphabet="ab▁cXé", min_size=1, max_size=5)
scores = st.floats(min_value=-50, max_value=0, allow_nan=False)


@given(st.dictionaries(surfaces, scores, max_size=20))
def test_serialization_roundtrip(table):
    m = UnigramModel(table)
    back = load_model(export_vocab(m))
    assert list(back) == list(m)
    for s in m:
        assert abs(back[s] - m[s]) <= 1e-6
    # canonical form is a fixed point
    assert export_vocab(back) == export_vocab(m)


@given(st.dictionaries(surfaces, scores, max_size=20))
def test_alphabet_is_union_of_surface_chars(table):
    m = UnigramModel(table)
    assert m.alphabet == {c for s in table for c in s}
    for c in m.alphabet:
        assert any(c in s for s in m)

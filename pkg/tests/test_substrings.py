from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import substring_counts
from unigram_extend.substrings import count_substrings, suffix_array_counts, truncated_suffix_array


def test_overlapping_occurrences_counted():
    assert count_substrings(["aaa"], 2) == {"a": 3, "aa": 2}
    assert suffix_array_counts(["aaa"], 2) == {"a": 3, "aa": 2}


def test_aba():
    expected = {"a": 2, "b": 1, "ab": 1, "ba": 1}
    assert count_substrings(["aba"], 2) == expected
    assert suffix_array_counts(["aba"], 2) == expected


def test_marker_only_opens_a_substring():
    counts = count_substrings(["▁ab▁a"], 3)
    assert "▁ab" in counts and "b▁" not in counts and "b▁a" not in counts
    assert "b▁" in count_substrings(["▁ab▁a"], 3, split_by_whitespace=False)


def test_empty_corpus():
    assert count_substrings([], 4) == {}
    assert suffix_array_counts([], 4) == {}
    assert suffix_array_counts([""], 4) == {}


def test_suffix_keys_are_sorted_and_truncated():
    keys = truncated_suffix_array(["banana"], 3)
    assert keys == sorted(keys)
    assert keys == ["a", "ana", "ana", "ban", "na", "nan"]


sentences = st.lists(st.text(alphabet="ab▁c", max_size=15), max_size=6)


@settings(max_examples=300, deadline=None)
@given(sentences, st.integers(1, 6), st.integers(1, 4), st.booleans())
def test_both_routes_match_brute_force(corpus, max_len, min_count, split):
    expected = substring_counts(corpus, max_len, min_count, split)
    assert count_substrings(corpus, max_len, min_count, split) == expected
    assert suffix_array_counts(corpus, max_len, min_count, split) == expected

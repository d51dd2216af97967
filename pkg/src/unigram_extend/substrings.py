"""Substring frequency extraction over a corpus.

Two interchangeable routes produce the same counts: direct enumeration with a
hash table, and a bottom-up traversal of LCP intervals over a suffix array
truncated at ``max_len`` characters.
"""

from __future__ import annotations

from collections import Counter

from .model import SPACE_MARK


def _whitespace_ok(sub: str) -> bool:
    # the space marker may only open a piece
    return SPACE_MARK not in sub[1:]


def count_substrings(sentences, max_len: int, min_count: int = 1,
                     split_by_whitespace: bool = True) -> Counter:
    """Occurrence counts of substrings of length 1..max_len (overlaps counted)."""
    counts = Counter()
    for s in sentences:
        n = len(s)
        for i in range(n):
            stop = min(n, i + max_len)
            if split_by_whitespace:
                j = s.find(SPACE_MARK, i + 1, stop)
                if j >= 0:
                    stop = j
            for j in range(i + 1, stop + 1):
                counts[s[i:j]] += 1
    if min_count > 1:
        counts = Counter({k: c for k, c in counts.items() if c >= min_count})
    return counts


def truncated_suffix_array(sentences, max_len: int) -> list:
    """Sorted suffix keys, each cut at the sentence end and at ``max_len``."""
    return sorted(s[i:i + max_len] for s in sentences for i in range(len(s)))


def _lcp(a: str, b: str) -> int:
    n = min(len(a), len(b))
    k = 0
    while k < n and a[k] == b[k]:
        k += 1
    return k


def suffix_array_counts(sentences, max_len: int, min_count: int = 1,
                        split_by_whitespace: bool = True) -> Counter:
    """Same contract as :func:`count_substrings`, via LCP intervals."""
    keys = truncated_suffix_array(sentences, max_len)
    n = len(keys)
    counts = Counter()
    if n == 0:
        return counts
    lcp = [0] * (n + 1)
    for i in range(1, n):
        lcp[i] = _lcp(keys[i - 1], keys[i])

    def report(depth, parent_depth, lb, size):
        if size < min_count:
            return
        for length in range(parent_depth + 1, depth + 1):
            counts[keys[lb][:length]] += size

    # each internal interval [lb, rb] with lcp value d holds the substrings of
    # length (parent d, d] shared by all its suffixes
    stack = [(0, 0)]
    for i in range(1, n + 1):
        lb = i - 1
        while lcp[i] < stack[-1][0]:
            depth, lb = stack.pop()
            report(depth, max(lcp[i], stack[-1][0]), lb, i - lb)
        if lcp[i] > stack[-1][0]:
            stack.append((lcp[i], lb))

    if min_count <= 1:
        # a suffix's own extensions beyond both neighbours' lcp occur once
        for i, key in enumerate(keys):
            shared = max(lcp[i], lcp[i + 1])
            for length in range(shared + 1, len(key) + 1):
                counts[key[:length]] += 1

    if split_by_whitespace:
        counts = Counter({k: c for k, c in counts.items() if _whitespace_ok(k)})
    return counts

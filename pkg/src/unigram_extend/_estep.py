"""Vectorized E step over a fixed corpus.

The corpus is cut into units (whole sentences, or space-marker-initial words
when no piece can straddle a marker), duplicate units are merged with
weights, and units of equal length are batched. Every substring up to the
maximum piece length gets an integer id once; scoring a model is then an
array gather, so repeated EM passes never rebuild lattices.

Requires every corpus character to have a single-character piece (no
unknown runs); callers fall back to per-sentence lattices otherwise.
"""

from __future__ import annotations

import re
from collections import Counter

import numpy as np

from .model import SPACE_MARK, UnigramModel

_WORD_SPLIT = re.compile(f"(?={SPACE_MARK})")


def splits_at_markers(model: UnigramModel) -> bool:
    """True when no lattice edge of ``model`` can cross a space marker."""
    if any(SPACE_MARK in s[1:] for s in model):
        return False
    return SPACE_MARK in model.covered_chars


class BatchedEStep:
    def __init__(self, sentences, max_len: int, split_words: bool):
        units = Counter()
        chars = set()
        for s in sentences:
            chars.update(s)
            if split_words:
                units.update(u for u in _WORD_SPLIT.split(s) if u)
            elif s:
                units[s] += 1
        self.chars = frozenset(chars)
        self.max_len = max_len
        self.split_words = split_words
        table: dict = {}
        by_length: dict = {}
        for unit, weight in units.items():
            by_length.setdefault(len(unit), []).append((unit, weight))
        staged = []
        for length in sorted(by_length):
            group = by_length[length]
            flat = []
            for unit, _ in group:
                for i in range(length):
                    row = [-1] * max_len
                    for ell in range(1, min(max_len, length - i) + 1):
                        row[ell - 1] = table.setdefault(unit[i:i + ell], len(table))
                    flat.append(row)
            weights = np.array([w for _, w in group], dtype=np.float64)
            staged.append((length, flat, weights))
        self.table = table
        # id len(table) is the -inf slot standing for "no substring here"
        self.buckets = []
        for length, flat, weights in staged:
            ids = np.array(flat, dtype=np.int64).reshape(len(weights), length, max_len)
            ids[ids < 0] = len(table)
            self.buckets.append((length, ids, weights))

    def applicable(self, mixture: UnigramModel) -> bool:
        if mixture.max_piece_len > self.max_len:
            return False
        if not self.chars <= mixture.covered_chars:
            return False
        return not self.split_words or splits_at_markers(mixture)

    def run(self, mixture: UnigramModel):
        """Return (log expected count per mixture surface, corpus log-likelihood)."""
        size = len(self.table) + 1
        scores = np.full(size, -np.inf)
        for surface, lp in mixture.items():
            k = self.table.get(surface)
            if k is not None:
                scores[k] = lp
        log_post = []
        loglik = 0.0
        peak = np.full(size, -np.inf)
        with np.errstate(invalid="ignore", over="ignore", divide="ignore"):
            for length, ids, weights in self.buckets:
                log_z, lp = self._bucket(length, scores[ids])
                loglik += float(weights @ log_z)
                lp += np.log(weights)[:, None, None]
                lp[np.isnan(lp)] = -np.inf
                np.maximum.at(peak, ids.ravel(), lp.ravel())
                log_post.append(lp)
            # scatter log-sum-exp: shift each id by its own maximum
            shift = np.where(np.isfinite(peak), peak, 0.0)
            sums = np.zeros(size)
            for (_, ids, _), lp in zip(self.buckets, log_post):
                flat = ids.ravel()
                sums += np.bincount(flat, weights=np.exp(lp.ravel() - shift[flat]), minlength=size)
            log_counts = np.where(sums > 0, shift + np.log(sums), -np.inf)
        counts = {}
        for surface in mixture:
            k = self.table.get(surface)
            counts[surface] = float(log_counts[k]) if k is not None else -np.inf
        return counts, loglik

    def _bucket(self, length, s):
        n, _, m = s.shape
        alpha = np.full((n, length + 1), -np.inf)
        alpha[:, 0] = 0.0
        for j in range(1, length + 1):
            ells = np.arange(1, min(m, j) + 1)
            starts = j - ells
            alpha[:, j] = np.logaddexp.reduce(alpha[:, starts] + s[:, starts, ells - 1], axis=1)
        beta = np.full((n, length + 1), -np.inf)
        beta[:, length] = 0.0
        for i in range(length - 1, -1, -1):
            ells = np.arange(1, min(m, length - i) + 1)
            beta[:, i] = np.logaddexp.reduce(s[:, i, ells - 1] + beta[:, i + ells], axis=1)
        log_z = alpha[:, length]
        ends = np.minimum(np.arange(length)[:, None] + np.arange(1, m + 1)[None, :], length)
        log_post = alpha[:, :length, None] + s + beta[:, ends] - log_z[:, None, None]
        return log_z, log_post

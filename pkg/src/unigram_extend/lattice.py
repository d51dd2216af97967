"""Segmentation lattice, Viterbi decoding and forward-backward posteriors."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import NamedTuple

from .model import UnigramModel, denormalize, normalize

NEG_INF = -math.inf


class Edge(NamedTuple):
    begin: int
    end: int
    surface: str
    log_prob: float
    is_unknown: bool = False


@dataclass
class Lattice:
    """All piece occurrences over one normalized sentence.

    ``begins[i]`` and ``ends[j]`` list indices into ``edges`` of the edges
    starting at ``i`` and ending at ``j``.
    """

    text: str
    edges: list
    begins: list
    ends: list

    @property
    def length(self) -> int:
        return len(self.text)

    def __len__(self):
        return len(self.edges)


@dataclass(frozen=True)
class TokenSequence:
    tokens: tuple
    total_log_prob: float
    oov_flags: tuple

    def __len__(self):
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    @property
    def n_unknown(self) -> int:
        return sum(self.oov_flags)


class Posterior(NamedTuple):
    expected_counts: dict
    log_z: float


def unknown_runs(text: str, model: UnigramModel) -> list:
    """Maximal runs of characters without a single-character piece, as (begin, end)."""
    covered = model.covered_chars
    runs = []
    start = None
    for i, ch in enumerate(text):
        if ch in covered:
            if start is not None:
                runs.append((start, i))
                start = None
        elif start is None:
            start = i
    if start is not None:
        runs.append((start, len(text)))
    return runs


def build_lattice(text: str, model: UnigramModel) -> Lattice:
    n = len(text)
    edges = []
    begins = [[] for _ in range(n + 1)]
    ends = [[] for _ in range(n + 1)]
    pieces = model.pieces

    def add(edge):
        begins[edge.begin].append(len(edges))
        ends[edge.end].append(len(edges))
        edges.append(edge)

    for i in range(n):
        for surface in model.prefixes_at(text, i):
            add(Edge(i, i + len(surface), surface, pieces[surface]))
    for b, e in unknown_runs(text, model):
        add(Edge(b, e, text[b:e], model.unk_log_prob, True))
    return Lattice(text, edges, begins, ends)


def viterbi(lattice: Lattice) -> TokenSequence:
    """Best path; exact score ties prefer fewer tokens, then a longer last
    edge, then the lexicographically smaller last surface."""
    n = lattice.length
    if n == 0:
        return TokenSequence((), 0.0, ())
    edges = lattice.edges
    score = [NEG_INF] * (n + 1)
    ntok = [0] * (n + 1)
    back = [-1] * (n + 1)
    score[0] = 0.0
    for j in range(1, n + 1):
        best = None
        for k in lattice.ends[j]:
            e = edges[k]
            i = e.begin
            if i > 0 and back[i] < 0:
                continue
            cand = (score[i] + e.log_prob, ntok[i] + 1, e.end - e.begin, e.surface)
            if best is None or _better(cand, best):
                best = cand
                back[j] = k
        if best is not None:
            score[j], ntok[j] = best[0], best[1]
    if back[n] < 0:
        raise RuntimeError("lattice is disconnected")
    path = []
    j = n
    while j > 0:
        e = edges[back[j]]
        path.append(e)
        j = e.begin
    path.reverse()
    return TokenSequence(
        tuple(e.surface for e in path),
        score[n],
        tuple(e.is_unknown for e in path),
    )


def _better(a, b) -> bool:
    if a[0] != b[0]:
        return a[0] > b[0]
    if a[1] != b[1]:
        return a[1] < b[1]
    if a[2] != b[2]:
        return a[2] > b[2]
    return a[3] < b[3]


def logsumexp(values) -> float:
    m = max(values, default=NEG_INF)
    if m == NEG_INF:
        return NEG_INF
    return m + math.log(sum(math.exp(v - m) for v in values))


def _alpha_beta(lattice: Lattice):
    n = lattice.length
    edges = lattice.edges
    alpha = [NEG_INF] * (n + 1)
    alpha[0] = 0.0
    for j in range(1, n + 1):
        alpha[j] = logsumexp([alpha[edges[k].begin] + edges[k].log_prob for k in lattice.ends[j]])
    beta = [NEG_INF] * (n + 1)
    beta[n] = 0.0
    for i in range(n - 1, -1, -1):
        beta[i] = logsumexp([edges[k].log_prob + beta[edges[k].end] for k in lattice.begins[i]])
    return alpha, beta


def log_expected_counts(lattice: Lattice) -> Posterior:
    """Like :func:`forward_backward` but with counts kept as logarithms.

    Posteriors far below the smallest float stay representable, which keeps
    rarely used pieces from collapsing to a zero count during EM.
    """
    if lattice.length == 0:
        return Posterior({}, 0.0)
    alpha, beta = _alpha_beta(lattice)
    log_z = alpha[lattice.length]
    if log_z == NEG_INF:
        return Posterior({}, log_z)
    terms = defaultdict(list)
    for e in lattice.edges:
        if not e.is_unknown:
            terms[e.surface].append(alpha[e.begin] + e.log_prob + beta[e.end] - log_z)
    return Posterior({s: logsumexp(v) for s, v in terms.items()}, log_z)


def forward_backward(lattice: Lattice) -> Posterior:
    """Total path mass and expected piece counts.

    Unknown-run edges take part in the normalizer but are not pieces, so they
    are left out of ``expected_counts``.
    """
    if lattice.length == 0:
        return Posterior({}, 0.0)
    alpha, beta = _alpha_beta(lattice)
    log_z = alpha[lattice.length]
    counts = defaultdict(float)
    if log_z == NEG_INF:
        return Posterior({}, log_z)
    for e in lattice.edges:
        if e.is_unknown:
            continue
        lp = alpha[e.begin] + e.log_prob + beta[e.end] - log_z
        if lp > NEG_INF:
            counts[e.surface] += math.exp(lp)
    return Posterior(dict(counts), log_z)


def backward_log_z(lattice: Lattice) -> float:
    """Normalizer computed from the backward pass only (consistency checks)."""
    if lattice.length == 0:
        return 0.0
    return _alpha_beta(lattice)[1][0]


def encode_normalized(text: str, model: UnigramModel) -> TokenSequence:
    return viterbi(build_lattice(text, model))


def encode(raw: str, model: UnigramModel, add_dummy_prefix: bool = True) -> TokenSequence:
    return viterbi(build_lattice(normalize(raw, add_dummy_prefix), model))


def decode(tokens) -> str:
    return denormalize(list(tokens))

"""From-scratch unigram model learning.

Seed the vocabulary with frequent corpus substrings scored by relative
frequency, then alternate EM re-estimation with pruning of the lowest-scoring
pieces until the target size is reached.
"""

from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from ._estep import BatchedEStep, splits_at_markers
from .lattice import build_lattice, log_expected_counts, logsumexp
from .model import UnigramModel, normalize
from .substrings import count_substrings, suffix_array_counts

logger = logging.getLogger(__name__)


class ConfigurationError(ValueError):
    """Training settings that cannot be satisfied."""


@dataclass(frozen=True)
class EMSettings:
    max_piece_len: int = 16
    min_count: int = 2
    seed_size: int = 1_000_000
    prune_ratio: float = 0.2
    em_inner_iters: int = 2
    final_em_iters: int = 2
    split_by_whitespace: bool = True
    harvester: str = "hash"

    def __post_init__(self):
        for name in ("max_piece_len", "min_count", "seed_size", "em_inner_iters"):
            if getattr(self, name) < 1:
                raise ConfigurationError(f"{name} must be a positive integer")
        if self.final_em_iters < 0:
            raise ConfigurationError("final_em_iters must be non-negative")
        if not 0.0 < self.prune_ratio < 1.0:
            raise ConfigurationError("prune_ratio must lie in (0, 1)")
        if self.harvester not in ("hash", "suffix_array"):
            raise ConfigurationError(f"unknown harvester {self.harvester!r}")


@dataclass(frozen=True)
class TrainerConfig(EMSettings):
    vocab_size: int = 8000

    def __post_init__(self):
        super().__post_init__()
        if self.vocab_size < 1:
            raise ConfigurationError("vocab_size must be a positive integer")


class Corpus:
    """Normalized training sentences (spaces already escaped)."""

    def __init__(self, sentences: Iterable[str] = ()):
        self.sentences = tuple(sentences)
        for s in self.sentences:
            if " " in s:
                raise ValueError(f"corpus sentence contains a raw space: {s!r}")

    @classmethod
    def from_raw(cls, lines: Iterable[str], add_dummy_prefix: bool = True) -> "Corpus":
        return cls(normalize(line, add_dummy_prefix) for line in lines)

    @classmethod
    def from_file(cls, path, add_dummy_prefix: bool = True) -> "Corpus":
        """One sentence per line; blank lines are skipped."""
        with open(path, encoding="utf-8") as f:
            lines = [line.rstrip("\n") for line in f]
        return cls.from_raw((line for line in lines if line), add_dummy_prefix)

    def __len__(self):
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)

    @property
    def alphabet(self) -> frozenset:
        return frozenset(c for s in self.sentences for c in s)


def harvest_candidates(corpus: Corpus, config: EMSettings,
                       keep: Optional[Callable[[str], bool]] = None) -> UnigramModel:
    """Initial model: frequent substrings scored by relative frequency.

    Single characters passing ``keep`` are always included. When more than
    ``seed_size`` candidates survive, the multi-character ones with the largest
    count * length are kept.
    """
    count = suffix_array_counts if config.harvester == "suffix_array" else count_substrings
    counts = count(corpus, config.max_piece_len, 1, config.split_by_whitespace)
    if keep is None:
        keep = _keep_all
    singles = {s: c for s, c in counts.items() if len(s) == 1 and keep(s)}
    multi = [(s, c) for s, c in counts.items()
             if len(s) > 1 and c >= config.min_count and keep(s)]
    room = max(config.seed_size - len(singles), 0)
    if len(multi) > room:
        multi.sort(key=lambda sc: (-sc[1] * len(sc[0]), sc[0]))
        multi = multi[:room]
    chosen = list(singles.items()) + multi
    total = sum(c for _, c in chosen)
    chosen.sort(key=lambda sc: (-sc[1], sc[0]))
    return UnigramModel((s, math.log(c / total)) for s, c in chosen)


def _keep_all(surface):
    return True


class _EStep:
    """Expected counts of a fixed corpus, reusing precomputed substring ids."""

    def __init__(self, corpus: Corpus, mixture: UnigramModel):
        self.sentences = corpus.sentences
        self.batched = BatchedEStep(self.sentences, max(mixture.max_piece_len, 1),
                                    split_words=splits_at_markers(mixture))

    def __call__(self, mixture: UnigramModel):
        if self.batched.applicable(mixture):
            return self.batched.run(mixture)
        return lattice_expectations(mixture, self.sentences)


def lattice_expectations(mixture: UnigramModel, sentences):
    """Per-sentence forward-backward; handles unknown runs.

    Returns (log expected count per mixture surface, corpus log-likelihood).
    """
    terms = defaultdict(list)
    loglik = 0.0
    for s in sentences:
        post = log_expected_counts(build_lattice(s, mixture))
        loglik += post.log_z
        for surface, lc in post.expected_counts.items():
            terms[surface].append(lc)
    return {s: logsumexp(terms.get(s, ())) for s in mixture}, loglik


def _mixture(model: UnigramModel, frozen: Optional[UnigramModel]) -> UnigramModel:
    if frozen is None or len(frozen) == 0:
        return model
    overlap = [s for s in model if s in frozen]
    if overlap:
        raise ValueError(f"model and frozen pieces overlap: {overlap[:5]}")
    return frozen.concat(model)


def _maximize(model: UnigramModel, log_counts: dict) -> UnigramModel:
    log_total = logsumexp(list(log_counts.values()))
    if log_total == -math.inf:
        return model
    return model.with_scores({s: log_counts.get(s, -math.inf) - log_total for s in model})


def em_step(model: UnigramModel, frozen: Optional[UnigramModel], corpus: Corpus,
            _estep: Optional[_EStep] = None) -> UnigramModel:
    """One EM update of ``model``'s scores, analyzing with ``frozen`` ∪ ``model``.

    The M step normalizes by the expected counts of every mixture piece but
    rewrites only ``model``; pieces with zero expected count get ``-inf``.
    """
    mixture = _mixture(model, frozen)
    estep = _estep if _estep is not None else _EStep(corpus, mixture)
    counts, loglik = estep(mixture)
    logger.debug("E step: corpus log-likelihood %.6f", loglik)
    return _maximize(model, counts)


def corpus_log_likelihood(model: UnigramModel, corpus: Corpus,
                          frozen: Optional[UnigramModel] = None) -> float:
    """Sum over sentences of the log total path mass."""
    mixture = _mixture(model, frozen)
    return lattice_expectations(mixture, corpus.sentences)[1]


def prune(model: UnigramModel, ratio: float, protected=frozenset(),
          target: Optional[int] = None) -> UnigramModel:
    """Drop the lowest-scoring ``floor(ratio * |prunable|)`` pieces.

    Zero-count (``-inf``) pieces always go. With a ``target`` the model never
    shrinks below it, and at least one piece is removed while above it.
    """
    if not 0.0 < ratio < 1.0:
        raise ValueError("ratio must lie in (0, 1)")
    prunable = sorted(((lp, s) for s, lp in model.items() if s not in protected))
    n_remove = math.floor(ratio * len(prunable))
    n_remove = max(n_remove, sum(1 for lp, _ in prunable if lp == -math.inf))
    if target is not None:
        excess = len(model) - target
        if excess > 0:
            n_remove = max(n_remove, 1)
        n_remove = min(n_remove, max(excess, 0))
    n_remove = min(n_remove, len(prunable))
    if n_remove <= 0:
        return model
    return model.without(s for _, s in prunable[:n_remove])


def run_em_loop(model: UnigramModel, corpus: Corpus, config: EMSettings, target: int,
                protected, frozen: Optional[UnigramModel] = None) -> UnigramModel:
    """Alternate EM and pruning until ``len(model) == target``, then polish."""
    estep = _EStep(corpus, _mixture(model, frozen))
    round_ = 0
    while len(model) > target:
        round_ += 1
        for _ in range(config.em_inner_iters):
            model = em_step(model, frozen, corpus, estep)
        before = len(model)
        model = prune(model, config.prune_ratio, protected, target)
        logger.info("round %d: %d -> %d pieces", round_, before, len(model))
    for _ in range(config.final_em_iters):
        model = em_step(model, frozen, corpus, estep)
    return model.sorted_by_score()


def train(corpus: Corpus, config: TrainerConfig) -> UnigramModel:
    """Learn a unigram model with exactly ``config.vocab_size`` pieces."""
    alphabet = corpus.alphabet
    if len(alphabet) > config.vocab_size:
        raise ConfigurationError(
            f"vocab_size {config.vocab_size} is smaller than the corpus alphabet ({len(alphabet)})")
    model = harvest_candidates(corpus, config)
    logger.info("initial model: %d candidates from %d sentences", len(model), len(corpus))
    if len(model) < config.vocab_size:
        raise ConfigurationError(
            f"vocab_size {config.vocab_size} exceeds the {len(model)} available candidates")
    protected = {s for s in model if len(s) == 1}
    return run_em_loop(model, corpus, config, config.vocab_size, protected)


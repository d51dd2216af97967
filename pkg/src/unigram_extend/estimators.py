"""Estimator wrappers so tokenizers compose with scikit-learn tooling.

``fit`` learns a vocabulary from raw sentences, ``transform`` maps sentences
to lists of subword surfaces and ``inverse_transform`` maps them back.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_documents, check_model, check_token_lists
from .extender import ExtensionConfig, extend, new_letters
from .lattice import encode
from .model import denormalize
from .trainer import Corpus, TrainerConfig, corpus_log_likelihood, train


class _TokenizerMixin:
    def transform(self, X):
        check_is_fitted(self, "model_")
        docs = check_documents(X)
        return [list(encode(doc, self.model_, self.add_dummy_prefix).tokens) for doc in docs]

    def fit_transform(self, X, y=None):
        docs = check_documents(X)
        return self.fit(docs, y).transform(docs)

    def inverse_transform(self, X):
        return [denormalize(tokens) for tokens in check_token_lists(X)]

    def score(self, X, y=None):
        """Corpus log-likelihood of ``X`` under the fitted model."""
        check_is_fitted(self, "model_")
        corpus = Corpus.from_raw(check_documents(X), self.add_dummy_prefix)
        return corpus_log_likelihood(self.model_, corpus)


class UnigramTokenizer(_TokenizerMixin, TransformerMixin, BaseEstimator):
    """Unigram language-model subword tokenizer.

    Parameters
    ----------
    vocab_size : int, default=8000
        Exact number of pieces in the learned model.
    max_piece_len, min_count, seed_size, prune_ratio, em_inner_iters,
    final_em_iters, split_by_whitespace, harvester
        See :class:`~unigram_extend.trainer.TrainerConfig`.
    add_dummy_prefix : bool, default=True
        Prepend a space marker to every sentence before segmentation.

    Attributes
    ----------
    model_ : UnigramModel
    """

    def __init__(self, vocab_size=8000, *, max_piece_len=16, min_count=2, seed_size=1_000_000,
                 prune_ratio=0.2, em_inner_iters=2, final_em_iters=2,
                 split_by_whitespace=True, harvester="hash", add_dummy_prefix=True):
        self.vocab_size = vocab_size
        self.max_piece_len = max_piece_len
        self.min_count = min_count
        self.seed_size = seed_size
        self.prune_ratio = prune_ratio
        self.em_inner_iters = em_inner_iters
        self.final_em_iters = final_em_iters
        self.split_by_whitespace = split_by_whitespace
        self.harvester = harvester
        self.add_dummy_prefix = add_dummy_prefix

    def _config(self):
        return TrainerConfig(
            vocab_size=self.vocab_size, max_piece_len=self.max_piece_len,
            min_count=self.min_count, seed_size=self.seed_size,
            prune_ratio=self.prune_ratio, em_inner_iters=self.em_inner_iters,
            final_em_iters=self.final_em_iters,
            split_by_whitespace=self.split_by_whitespace, harvester=self.harvester,
        )

    def fit(self, X, y=None):
        corpus = Corpus.from_raw(check_documents(X), self.add_dummy_prefix)
        self.model_ = train(corpus, self._config())
        return self

    @classmethod
    def from_model(cls, model, add_dummy_prefix=True):
        """A fitted tokenizer wrapping an existing model or vocabulary file."""
        model = check_model(model)
        tok = cls(vocab_size=len(model), add_dummy_prefix=add_dummy_prefix)
        tok.model_ = model
        return tok


class SubwordExtender(_TokenizerMixin, TransformerMixin, BaseEstimator):
    """Extend a fixed unigram model with subwords for unseen letters.

    ``fit`` learns ``additional_vocab_size`` pieces that each begin with a
    letter absent from ``original``; ``transform`` tokenizes with the merged
    model, which segments original-alphabet text exactly as ``original`` does.

    Attributes
    ----------
    original_ : UnigramModel
    additional_ : UnigramModel
    model_ : UnigramModel
        Merged model: original pieces followed by ``additional_``.
    new_letters_ : frozenset of str
    """

    def __init__(self, original=None, additional_vocab_size=8000, *, max_piece_len=16,
                 min_count=2, seed_size=1_000_000, prune_ratio=0.2, em_inner_iters=2,
                 final_em_iters=2, split_by_whitespace=True, harvester="hash",
                 add_dummy_prefix=True):
        self.original = original
        self.additional_vocab_size = additional_vocab_size
        self.max_piece_len = max_piece_len
        self.min_count = min_count
        self.seed_size = seed_size
        self.prune_ratio = prune_ratio
        self.em_inner_iters = em_inner_iters
        self.final_em_iters = final_em_iters
        self.split_by_whitespace = split_by_whitespace
        self.harvester = harvester
        self.add_dummy_prefix = add_dummy_prefix

    def fit(self, X, y=None):
        if self.original is None:
            raise ValueError("SubwordExtender needs an original model")
        original = check_model(self.original, "original")
        corpus = Corpus.from_raw(check_documents(X), self.add_dummy_prefix)
        config = ExtensionConfig(
            additional_vocab_size=self.additional_vocab_size,
            max_piece_len=self.max_piece_len, min_count=self.min_count,
            seed_size=self.seed_size, prune_ratio=self.prune_ratio,
            em_inner_iters=self.em_inner_iters, final_em_iters=self.final_em_iters,
            split_by_whitespace=self.split_by_whitespace, harvester=self.harvester,
        )
        self.new_letters_ = new_letters(corpus, original)
        self.original_ = original
        self.additional_, self.model_ = extend(corpus, original, config)
        return self

"""Tokenization statistics against a reference vocabulary."""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import encode_normalized
from .model import UnigramModel


@dataclass(frozen=True)
class TokenizationReport:
    tokens_per_sentence: float
    oov_rate: float
    words_for_no_oov: int
    oov_surfaces: frozenset = frozenset()

    def as_lines(self) -> str:
        return (f"tokens_per_sentence: {self.tokens_per_sentence:.6f}\n"
                f"oov_rate: {self.oov_rate:.6f}\n"
                f"words_for_no_oov: {self.words_for_no_oov}\n")

    def as_record(self) -> str:
        return (f"tokens_per_sentence={self.tokens_per_sentence:.6f}\t"
                f"oov_rate={self.oov_rate:.6f}\t"
                f"words_for_no_oov={self.words_for_no_oov}\n")


def segment(sentence: str, model: UnigramModel, split_unknown: bool = False):
    """Tokens and OOV flags of one normalized sentence.

    With ``split_unknown`` unknown runs are broken into single letters, the
    letter-fallback baseline.
    """
    seq = encode_normalized(sentence, model)
    if not split_unknown:
        return list(seq.tokens), list(seq.oov_flags)
    tokens, flags = [], []
    for tok, unk in zip(seq.tokens, seq.oov_flags):
        if unk:
            tokens.extend(tok)
            flags.extend([True] * len(tok))
        else:
            tokens.append(tok)
            flags.append(False)
    return tokens, flags


def analyze(corpus, model: UnigramModel, reference_vocab,
            split_unknown: bool = False) -> TokenizationReport:
    """Mean tokens per sentence, OOV token rate, and distinct OOV surfaces.

    A token is OOV when its surface is not in ``reference_vocab``; unknown
    runs are judged the same way, so they are OOV unless listed explicitly.
    """
    reference = set(reference_vocab)
    n_sent = n_tok = n_oov = 0
    missing = set()
    for sentence in corpus:
        n_sent += 1
        tokens, _ = segment(sentence, model, split_unknown)
        n_tok += len(tokens)
        for tok in tokens:
            if tok not in reference:
                n_oov += 1
                missing.add(tok)
    if n_sent == 0:
        return TokenizationReport(0.0, 0.0, 0)
    return TokenizationReport(
        n_tok / n_sent,
        n_oov / n_tok if n_tok else 0.0,
        len(missing),
        frozenset(missing),
    )

"""Add subwords for an unseen script to an existing unigram model.

Only substrings whose first character is unknown to the original model become
candidates. Their scores are re-estimated by EM while the corpus is analyzed
with the original and additional pieces together; the original pieces are
never rescored or removed. Because no additional surface can start inside
original-alphabet text, tokenization of that text is unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .model import SPACE_MARK, UnigramModel
from .trainer import ConfigurationError, Corpus, EMSettings, harvest_candidates, run_em_loop


class EmptyExtensionError(ValueError):
    """The corpus has no characters missing from the original model."""


@dataclass(frozen=True)
class ExtensionConfig(EMSettings):
    additional_vocab_size: int = 8000

    def __post_init__(self):
        super().__post_init__()
        if self.additional_vocab_size < 1:
            raise ConfigurationError("additional_vocab_size must be a positive integer")


class Extension(NamedTuple):
    additional: UnigramModel
    merged: UnigramModel


def new_letters(corpus: Corpus, original: UnigramModel) -> frozenset:
    return frozenset(corpus.alphabet - original.alphabet - {SPACE_MARK})


def extend(corpus: Corpus, original: UnigramModel, config: ExtensionConfig) -> Extension:
    """Learn ``config.additional_vocab_size`` pieces for the new letters in ``corpus``.

    Returns the additional model and the merged model (original pieces in
    their original order and scores, followed by the additional pieces).
    """
    letters = new_letters(corpus, original)
    if not letters:
        raise EmptyExtensionError("no new letters: the corpus is covered by the original alphabet")
    target = config.additional_vocab_size
    if target < len(letters):
        raise ConfigurationError(
            f"additional vocabulary size {target} is smaller than the {len(letters)} new letters")

    def starts_with_new_letter(surface):
        return surface[0] in letters

    additional = harvest_candidates(corpus, config, keep=starts_with_new_letter)
    if len(additional) < target:
        raise ConfigurationError(
            f"additional vocabulary size {target} exceeds the {len(additional)} available candidates")
    protected = {s for s in additional if len(s) == 1}
    additional = run_em_loop(additional, corpus, config, target, protected, frozen=original)
    return Extension(additional, original.concat(additional))

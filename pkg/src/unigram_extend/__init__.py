"""Unigram language-model subword tokenizer with script extension."""

from .estimators import SubwordExtender, UnigramTokenizer
from .extender import EmptyExtensionError, Extension, ExtensionConfig, extend, new_letters
from .lattice import (
    Lattice,
    TokenSequence,
    build_lattice,
    decode,
    encode,
    forward_backward,
    viterbi,
)
from .model import (
    SPACE_MARK,
    ModelValidationError,
    Piece,
    UnigramModel,
    VocabFormatError,
    denormalize,
    export_vocab,
    load_model,
    normalize,
    read_model,
    write_model,
)
from .stats import TokenizationReport, analyze
from .trainer import (
    ConfigurationError,
    Corpus,
    TrainerConfig,
    corpus_log_likelihood,
    em_step,
    harvest_candidates,
    prune,
    train,
)

__version__ = "0.1.0"

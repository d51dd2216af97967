"""Pieces, unigram models, whitespace escaping and the text vocabulary format.

The vocabulary format is the one written by ``spm_export_vocab``: one
``surface<TAB>score`` line per piece, UTF-8, LF-terminated, no header.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

SPACE_MARK = "▁"
UNK_PENALTY = 10.0
SCORE_DIGITS = 6

# Trie nodes are plain dicts keyed by character; this key holds the surface
# of a piece ending at the node. The empty string is never a character.
_TERMINAL = ""


class VocabFormatError(ValueError):
    """A vocabulary file line could not be parsed."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class ModelValidationError(ValueError):
    """A model violates one of its structural invariants."""


@dataclass(frozen=True)
class Piece:
    """A subword surface paired with its natural-log probability.

    A score of ``-inf`` is tolerated as the zero-count sentinel produced by
    EM; such pieces never produce lattice edges and are pruned first.
    """

    surface: str
    log_prob: float

    def __post_init__(self):
        if not self.surface:
            raise ModelValidationError("piece surface must be non-empty")
        if " " in self.surface:
            raise ModelValidationError(f"piece surface contains a raw space: {self.surface!r}")
        if math.isnan(self.log_prob) or self.log_prob == math.inf:
            raise ModelValidationError(f"invalid score {self.log_prob} for {self.surface!r}")


class UnigramModel:
    """An immutable, ordered unigram vocabulary.

    Parameters
    ----------
    pieces : iterable of Piece or (surface, log_prob) pairs, or a mapping
        Insertion order is kept and used for serialization.

    Attributes
    ----------
    alphabet : frozenset of str
        Every character occurring in some surface.
    unk_log_prob : float
        Score of an unknown-run edge, ``min(score) - 10``.
    max_piece_len : int
        Length of the longest surface (0 for an empty model).
    """

    __slots__ = ("_pieces", "_alphabet", "_unk", "_max_len", "_trie", "_singles")

    def __init__(self, pieces=()):
        if isinstance(pieces, Mapping):
            pieces = pieces.items()
        table = {}
        for item in pieces:
            piece = item if isinstance(item, Piece) else Piece(item[0], float(item[1]))
            if piece.surface in table:
                raise ModelValidationError(f"duplicate surface {piece.surface!r}")
            table[piece.surface] = piece.log_prob
        self._pieces = table
        self._alphabet = frozenset(c for s in table for c in s)
        finite = [lp for lp in table.values() if lp > -math.inf]
        self._unk = (min(finite) if finite else 0.0) - UNK_PENALTY
        self._max_len = max(map(len, table), default=0)
        self._trie = None
        self._singles = frozenset(s for s, lp in table.items() if len(s) == 1 and lp > -math.inf)

    # -- mapping-ish access -------------------------------------------------

    def __len__(self):
        return len(self._pieces)

    def __iter__(self) -> Iterator[str]:
        return iter(self._pieces)

    def __contains__(self, surface):
        return surface in self._pieces

    def __getitem__(self, surface) -> float:
        return self._pieces[surface]

    def __eq__(self, other):
        if not isinstance(other, UnigramModel):
            return NotImplemented
        return list(self._pieces.items()) == list(other._pieces.items())

    def __repr__(self):
        return f"UnigramModel(n_pieces={len(self)}, alphabet_size={len(self._alphabet)})"

    @property
    def pieces(self) -> Mapping[str, float]:
        return MappingProxyType(self._pieces)

    def items(self):
        return self._pieces.items()

    def to_pieces(self) -> list[Piece]:
        return [Piece(s, lp) for s, lp in self._pieces.items()]

    @property
    def alphabet(self) -> frozenset:
        return self._alphabet

    @property
    def unk_log_prob(self) -> float:
        return self._unk

    @property
    def max_piece_len(self) -> int:
        return self._max_len

    @property
    def covered_chars(self) -> frozenset:
        """Characters that have a single-character piece with a finite score."""
        return self._singles

    @property
    def trie(self) -> dict:
        """Prefix tree over surfaces with finite scores, built on first use."""
        if self._trie is None:
            root: dict = {}
            for surface, lp in self._pieces.items():
                if lp == -math.inf:
                    continue
                node = root
                for ch in surface:
                    node = node.setdefault(ch, {})
                node[_TERMINAL] = surface
            self._trie = root
        return self._trie

    def prefixes_at(self, text: str, begin: int) -> Iterator[str]:
        """Yield surfaces that occur in ``text`` starting at ``begin``, shortest first."""
        node = self.trie
        for ch in text[begin:begin + self._max_len]:
            node = node.get(ch)
            if node is None:
                return
            surface = node.get(_TERMINAL)
            if surface is not None:
                yield surface

    # -- functional updates -------------------------------------------------

    def with_scores(self, scores: Mapping[str, float]) -> "UnigramModel":
        """Return a copy where the given surfaces carry new scores; order is kept."""
        unknown = set(scores) - self._pieces.keys()
        if unknown:
            raise KeyError(f"surfaces not in model: {sorted(unknown)[:5]}")
        return UnigramModel((s, scores.get(s, lp)) for s, lp in self._pieces.items())

    def without(self, surfaces: Iterable[str]) -> "UnigramModel":
        drop = set(surfaces)
        return UnigramModel((s, lp) for s, lp in self._pieces.items() if s not in drop)

    def sorted_by_score(self) -> "UnigramModel":
        """Copy ordered by descending score, ties by surface."""
        return UnigramModel(sorted(self._pieces.items(), key=lambda kv: (-kv[1], kv[0])))

    def concat(self, other: "UnigramModel") -> "UnigramModel":
        """This model's pieces followed by ``other``'s; surfaces must not overlap."""
        return UnigramModel(list(self._pieces.items()) + list(other.items()))


def normalize(raw: str, add_dummy_prefix: bool = True) -> str:
    """Escape spaces as U+2581, optionally prepending one marker.

    No other normalization is applied; empty input stays empty.
    """
    if not raw:
        return ""
    text = raw.replace(" ", SPACE_MARK)
    return SPACE_MARK + text if add_dummy_prefix else text


def denormalize(tokens: Sequence[str]) -> str:
    """Join surfaces back into text, dropping one leading space if present."""
    text = "".join(tokens).replace(SPACE_MARK, " ")
    return text[1:] if text.startswith(" ") else text


def format_score(log_prob: float) -> str:
    text = f"{log_prob:.{SCORE_DIGITS}f}"
    # tiny negatives and -0.0 would otherwise render as "-0.000000"
    return text[1:] if text == "-0." + "0" * SCORE_DIGITS else text


def parse_vocab(lines: Iterable[str]) -> UnigramModel:
    """Build a model from ``surface<TAB>score`` lines; blank lines are skipped."""
    pieces = {}
    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\n").rstrip("\r")
        if not line:
            continue
        surface, sep, score = line.rpartition("\t")
        if not sep:
            raise VocabFormatError("expected 'surface<TAB>score'", lineno)
        try:
            value = float(score)
        except ValueError:
            raise VocabFormatError(f"unparseable score {score!r}", lineno) from None
        if surface in pieces:
            raise ModelValidationError(f"line {lineno}: duplicate surface {surface!r}")
        try:
            pieces[surface] = Piece(surface, value)
        except ModelValidationError as exc:
            raise VocabFormatError(str(exc), lineno) from None
    return UnigramModel(pieces.values())


def load_model(text: str) -> UnigramModel:
    """Parse the contents of a vocabulary file."""
    return parse_vocab(text.split("\n"))


def read_model(path) -> UnigramModel:
    with open(path, encoding="utf-8") as f:
        return parse_vocab(f)


def export_vocab(model: UnigramModel) -> str:
    return "".join(f"{s}\t{format_score(lp)}\n" for s, lp in model.items())


def write_model(model: UnigramModel, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(export_vocab(model))

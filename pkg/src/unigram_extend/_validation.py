from __future__ import annotations

import os

from .model import UnigramModel, read_model


def check_documents(X, name="X") -> list:
    """Materialize an iterable of raw text documents, rejecting a bare string."""
    if isinstance(X, str):
        raise ValueError(f"Iterable over raw text documents expected for {name}, string object received.")
    try:
        docs = list(X)
    except TypeError:
        raise TypeError(f"{name} must be an iterable of strings, got {type(X).__name__}") from None
    for i, doc in enumerate(docs):
        if not isinstance(doc, str):
            raise TypeError(f"{name}[{i}] must be a string, got {type(doc).__name__}")
    return docs


def check_token_lists(X, name="X") -> list:
    if isinstance(X, str):
        raise ValueError(f"{name} must be a sequence of token sequences, string object received.")
    out = []
    for i, tokens in enumerate(X):
        if isinstance(tokens, str):
            raise TypeError(f"{name}[{i}] must be a sequence of tokens, not a string")
        out.append(list(tokens))
    return out


def check_model(model, name="model") -> UnigramModel:
    """Accept a model instance or a path to a vocabulary file."""
    if isinstance(model, UnigramModel):
        return model
    if isinstance(model, (str, os.PathLike)):
        return read_model(model)
    raise TypeError(f"{name} must be a UnigramModel or a vocabulary path, got {type(model).__name__}")

"""Text embedding files plus cosine neighbor and analogy queries.

File format (word2vec-compatible text): a header line ``V N`` followed by V
lines of ``word f1 f2 ... fN``. Floats use Python's shortest round-trip
repr, so export -> import reproduces vectors bit-exactly.
"""

from __future__ import annotations

import os
from typing import Sequence

import numpy as np

from .errors import UnknownWord


def save_embeddings(
    path: str | os.PathLike, words: Sequence[str], vectors: np.ndarray
) -> None:
    if len(words) != len(vectors):
        raise ValueError("words and vectors disagree in length")
    v, n = vectors.shape
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{v} {n}\n")
        for word, row in zip(words, vectors):
            fh.write(word + " " + " ".join(repr(float(x)) for x in row) + "\n")


def load_embeddings(path: str | os.PathLike) -> tuple[list[str], np.ndarray]:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().split()
        v, n = int(header[0]), int(header[1])
        words: list[str] = []
        vectors = np.empty((v, n))
        for i in range(v):
            parts = fh.readline().rstrip("\n").split(" ")
            if len(parts) != n + 1:
                raise ValueError(f"row {i}: expected {n} floats, got {len(parts) - 1}")
            words.append(parts[0])
            vectors[i] = [float(x) for x in parts[1:]]
    if len(set(words)) != v:
        raise ValueError("duplicate words in embedding file")
    return words, vectors


def _cosine_to(vectors: np.ndarray, query: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(vectors, axis=1)
    qnorm = np.linalg.norm(query)
    denom = norms * qnorm
    sims = np.zeros(len(vectors))
    ok = denom > 0
    sims[ok] = (vectors[ok] @ query) / denom[ok]
    return sims


def neighbors(
    words: Sequence[str],
    vectors: np.ndarray,
    query_vector: np.ndarray,
    k: int,
    exclude: Sequence[str] = (),
) -> list[tuple[str, float]]:
    """Top-k words by cosine similarity, ties broken by word order."""
    sims = _cosine_to(vectors, query_vector)
    excluded = set(exclude)
    ranked = sorted(
        (i for i in range(len(words)) if words[i] not in excluded),
        key=lambda i: (-sims[i], i),
    )
    return [(words[i], float(sims[i])) for i in ranked[: max(k, 0)]]


def nearest_words(
    words: Sequence[str], vectors: np.ndarray, word: str, k: int
) -> list[tuple[str, float]]:
    """k nearest words to ``word`` (itself excluded)."""
    index = {w: i for i, w in enumerate(words)}
    if word not in index:
        raise UnknownWord(word)
    return neighbors(words, vectors, vectors[index[word]], k, exclude=[word])


def analogy(
    words: Sequence[str],
    vectors: np.ndarray,
    a: str,
    b: str,
    c: str,
    k: int,
) -> list[tuple[str, float]]:
    """Neighbors of vector(b) - vector(a) + vector(c), excluding a, b, c."""
    index = {w: i for i, w in enumerate(words)}
    for w in (a, b, c):
        if w not in index:
            raise UnknownWord(w)
    composed = vectors[index[b]] - vectors[index[a]] + vectors[index[c]]
    return neighbors(words, vectors, composed, k, exclude=[a, b, c])

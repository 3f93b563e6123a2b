"""Corpus ingestion: vocabulary construction and sliding-window training instances."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import EmptyVocabulary, UnknownWord


def tokenize(text: str, lowercase: bool = True) -> list[str]:
    """Split text on Unicode whitespace (newlines included); optionally lowercase."""
    if lowercase:
        text = text.lower()
    return text.split()


@dataclass(frozen=True)
class Vocabulary:
    """Word <-> index bijection with occurrence counts.

    Words are ordered by descending count, ties broken by first appearance,
    so downstream Huffman trees and noise tables are deterministic.
    """

    words: tuple[str, ...]
    counts: tuple[int, ...]
    index: dict[str, int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, token: str) -> bool:
        return token in self.index

    def encode(self, token: str) -> int:
        try:
            return self.index[token]
        except KeyError:
            raise UnknownWord(token) from None

    def encode_corpus(self, tokens: Iterable[str]) -> list[int]:
        """Map tokens to ids, silently dropping out-of-vocabulary tokens."""
        idx = self.index
        return [idx[t] for t in tokens if t in idx]


def build_vocab(tokens: Sequence[str], min_count: int = 1) -> Vocabulary:
    """Build a vocabulary of tokens occurring at least ``min_count`` times.

    Raises EmptyVocabulary if fewer than 2 distinct tokens survive.
    """
    if min_count < 1:
        raise ValueError(f"min_count must be >= 1, got {min_count}")
    counter = Counter(tokens)
    first_seen: dict[str, int] = {}
    for pos, tok in enumerate(tokens):
        if tok not in first_seen:
            first_seen[tok] = pos
    survivors = [t for t, c in counter.items() if c >= min_count]
    if len(survivors) < 2:
        raise EmptyVocabulary(
            f"need >= 2 distinct tokens with count >= {min_count}, got {len(survivors)}"
        )
    survivors.sort(key=lambda t: (-counter[t], first_seen[t]))
    words = tuple(survivors)
    counts = tuple(counter[t] for t in words)
    index = {t: i for i, t in enumerate(words)}
    return Vocabulary(words=words, counts=counts, index=index)


@dataclass(frozen=True)
class TrainingInstance:
    """One SGD step's worth of data.

    CBOW: ``context`` words predict the single ``target``.
    Skip-gram: ``center`` predicts each word in ``outputs``.
    Exactly one of (target) / (center, outputs) is set, per ``mode``.
    """

    mode: str  # "cbow" | "skipgram"
    context: tuple[int, ...] = ()
    target: int = -1
    center: int = -1
    outputs: tuple[int, ...] = ()


def windows(
    ids: Sequence[int], window: int, mode: str
) -> Iterator[TrainingInstance]:
    """Generate one training instance per corpus position, left to right.

    Context is up to ``window`` ids on each side, truncated at the corpus
    boundaries. Positions with no context (only possible for length-1 input)
    are skipped.
    """
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    if mode not in ("cbow", "skipgram"):
        raise ValueError(f"unknown mode {mode!r}")
    n = len(ids)
    for pos in range(n):
        lo = max(0, pos - window)
        hi = min(n, pos + window + 1)
        ctx = tuple(ids[lo:pos]) + tuple(ids[pos + 1 : hi])
        if not ctx:
            continue
        if mode == "cbow":
            yield TrainingInstance(mode="cbow", context=ctx, target=ids[pos])
        else:
            yield TrainingInstance(mode="skipgram", center=ids[pos], outputs=ctx)

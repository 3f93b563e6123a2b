"""Noise distribution and negative-sample drawing.

The noise distribution is the unigram distribution raised to the 3/4 power
and renormalized. Sampling uses Vose's alias method: O(V) setup, O(1) per
draw, and the table reproduces the target probabilities exactly.

Randomness comes from a caller-owned ``numpy.random.Generator`` (PCG64 when
built via ``make_rng``); the same seed always yields the same stream.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InvalidCounts


def make_rng(seed: int) -> np.random.Generator:
    """Deterministic 64-bit-seeded PCG64 stream."""
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class NoiseDistribution:
    probs: np.ndarray                  # (V,) sums to 1
    prob_table: np.ndarray = field(repr=False)   # alias acceptance thresholds
    alias_table: np.ndarray = field(repr=False)  # alias targets

    @property
    def vocab_size(self) -> int:
        return len(self.probs)

    def draw(self, rng: np.random.Generator) -> int:
        """One draw from probs via the alias table."""
        i = int(rng.integers(self.vocab_size))
        if rng.random() < self.prob_table[i]:
            return i
        return int(self.alias_table[i])


def build_noise(counts: Sequence[int], power: float = 0.75) -> NoiseDistribution:
    """Normalized powered unigram counts plus the alias table."""
    v = len(counts)
    if v < 2:
        raise InvalidCounts(f"need >= 2 words, got {v}")
    counts_arr = np.asarray(counts, dtype=np.float64)
    if np.any(counts_arr < 1):
        raise InvalidCounts("all counts must be >= 1")
    weighted = counts_arr**power
    probs = weighted / weighted.sum()

    # Vose alias construction on probabilities scaled to mean 1.
    scaled = probs * v
    prob_table = np.zeros(v)
    alias_table = np.zeros(v, dtype=np.int64)
    small = [i for i in range(v) if scaled[i] < 1.0]
    large = [i for i in range(v) if scaled[i] >= 1.0]
    scaled = scaled.copy()
    while small and large:
        s = small.pop()
        l = large.pop()
        prob_table[s] = scaled[s]
        alias_table[s] = l
        scaled[l] -= 1.0 - scaled[s]
        if scaled[l] < 1.0:
            small.append(l)
        else:
            large.append(l)
    for i in large + small:
        prob_table[i] = 1.0
        alias_table[i] = i
    return NoiseDistribution(probs=probs, prob_table=prob_table, alias_table=alias_table)


def sample_negatives(
    dist: NoiseDistribution,
    k: int,
    exclude: int | None,
    rng: np.random.Generator,
) -> list[int]:
    """Draw k i.i.d. negatives; draws equal to ``exclude`` are redrawn.

    Duplicates among the negatives are allowed and each contributes its own
    gradient term downstream.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    out: list[int] = []
    while len(out) < k:
        w = dist.draw(rng)
        if exclude is not None and w == exclude:
            continue
        out.append(w)
    return out

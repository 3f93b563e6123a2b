"""Sklearn-style estimator wrapping the full training pipeline.

``fit`` takes a token sequence (or raw text), builds the vocabulary and
windows, and runs SGD; ``transform`` maps words to their learned input
vectors so the model composes with sklearn pipelines.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import embeddings
from .model import ModelConfig
from .trainer import TrainPlan, train
from .vocab import build_vocab, tokenize, windows


class Word2Vec(BaseEstimator, TransformerMixin):
    """Word-embedding trainer with a fit/transform surface.

    Parameters mirror the CLI flags: ``architecture`` in {cbow, skipgram},
    ``objective`` in {softmax, hs, ns}; ``k_negatives`` only matters for ns.
    """

    def __init__(
        self,
        dim: int = 10,
        architecture: str = "cbow",
        objective: str = "softmax",
        window: int = 2,
        k_negatives: int = 5,
        eta: float = 0.025,
        epochs: int = 5,
        min_count: int = 1,
        seed: int = 0,
        shuffle: str = "off",
        lowercase: bool = True,
    ):
        self.dim = dim
        self.architecture = architecture
        self.objective = objective
        self.window = window
        self.k_negatives = k_negatives
        self.eta = eta
        self.epochs = epochs
        self.min_count = min_count
        self.seed = seed
        self.shuffle = shuffle
        self.lowercase = lowercase

    def _tokens(self, X) -> list[str]:
        if isinstance(X, str):
            return tokenize(X, lowercase=self.lowercase)
        tokens = [t.lower() if self.lowercase else t for t in X]
        if not all(isinstance(t, str) for t in tokens):
            raise TypeError("X must be a string or an iterable of tokens")
        return tokens

    def fit(self, X: str | Iterable[str], y=None) -> "Word2Vec":
        tokens = self._tokens(X)
        self.vocab_ = build_vocab(tokens, min_count=self.min_count)
        ids = self.vocab_.encode_corpus(tokens)
        instances = list(windows(ids, self.window, self.architecture))
        config = ModelConfig(
            vocab_size=len(self.vocab_),
            dim=self.dim,
            architecture=self.architecture,
            objective=self.objective,
            k_negatives=self.k_negatives if self.objective == "ns" else 1,
            eta=self.eta,
        )
        plan = TrainPlan(
            epochs=self.epochs, eta0=self.eta, shuffle=self.shuffle, seed=self.seed
        )
        report = train(instances, config, plan, counts=self.vocab_.counts)
        self.input_vectors_ = report.state.input_vectors
        self.output_vectors_ = report.state.output_vectors
        self.epoch_mean_losses_ = report.epoch_mean_losses
        return self

    def transform(self, X: Sequence[str]) -> np.ndarray:
        """Map words to their learned input vectors."""
        check_is_fitted(self, "input_vectors_")
        tokens = self._tokens(X)
        return self.input_vectors_[[self.vocab_.encode(t) for t in tokens]]

    def most_similar(self, word: str, k: int = 5) -> list[tuple[str, float]]:
        check_is_fitted(self, "input_vectors_")
        query = word.lower() if self.lowercase else word
        return embeddings.nearest_words(self.vocab_.words, self.input_vectors_, query, k)

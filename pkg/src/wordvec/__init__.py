"""Desk-scale word-embedding engine: CBOW and skip-gram with full softmax,
hierarchical softmax, and negative sampling, verified end to end against a
finite-difference gradient oracle."""

from .errors import (
    EmptyVocabulary,
    InvalidCounts,
    NonFiniteLoss,
    UnknownWord,
    WordvecError,
)
from .estimator import Word2Vec
from .huffman import HuffmanTree, PathSpec, build_tree
from .model import ModelConfig, ModelState, StepReport, init_state, train_step
from .noise import NoiseDistribution, build_noise, make_rng, sample_negatives
from .trainer import TrainPlan, TrainReport, TrainingSession, train
from .vocab import TrainingInstance, Vocabulary, build_vocab, tokenize, windows

__all__ = [
    "EmptyVocabulary",
    "HuffmanTree",
    "InvalidCounts",
    "ModelConfig",
    "ModelState",
    "NoiseDistribution",
    "NonFiniteLoss",
    "PathSpec",
    "StepReport",
    "TrainPlan",
    "TrainReport",
    "TrainingInstance",
    "TrainingSession",
    "UnknownWord",
    "Vocabulary",
    "Word2Vec",
    "WordvecError",
    "build_noise",
    "build_tree",
    "build_vocab",
    "init_state",
    "make_rng",
    "sample_negatives",
    "tokenize",
    "train",
    "train_step",
    "windows",
]

__version__ = "0.1.0"

"""Exception types shared across the package."""


class WordvecError(Exception):
    """Base class for all wordvec errors."""


class EmptyVocabulary(WordvecError):
    """Raised when fewer than two distinct tokens survive vocabulary filtering."""


class UnknownWord(WordvecError, KeyError):
    """Raised when a token is not present in the vocabulary."""


class InvalidCounts(WordvecError, ValueError):
    """Raised for count vectors with zero entries or fewer than two words."""


class NonFiniteLoss(WordvecError, ArithmeticError):
    """Raised when training produces a NaN/Inf loss; message carries diagnostics."""

"""Model mathematics: hidden layer, the three output objectives, and SGD updates.

All three objectives (full softmax, hierarchical softmax, negative sampling)
share the same skeleton per training step:

1. ``hidden``     -- h is a row copy (skip-gram) or context average (CBOW).
2. objective      -- per-row prediction errors on the output side, the loss,
                     and EH, the error vector backpropagated to the input side.
3. output update  -- each touched output row j moves by -eta * err_j * h.
4. input update   -- the input row(s) move by -eta * EH (scaled 1/C for CBOW).

All prediction errors and EH are evaluated at the parameter values from
*before* this step's updates, so one step applies the exact gradient of the
step loss at a single parameter point. The gradient-check suite in
``wordvec.verify`` depends on this.

Everything is float64; no clamping or regularization is applied.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .huffman import HuffmanTree, PathSpec
from .noise import NoiseDistribution, sample_negatives
from .vocab import TrainingInstance

ARCHITECTURES = ("cbow", "skipgram")
OBJECTIVES = ("softmax", "hs", "ns")


@dataclass(frozen=True)
class ModelConfig:
    vocab_size: int
    dim: int
    architecture: str = "cbow"
    objective: str = "softmax"
    k_negatives: int = 5
    eta: float = 0.025

    def __post_init__(self) -> None:
        if self.vocab_size < 2:
            raise ValueError(f"vocab_size must be >= 2, got {self.vocab_size}")
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        if self.architecture not in ARCHITECTURES:
            raise ValueError(f"unknown architecture {self.architecture!r}")
        if self.objective not in OBJECTIVES:
            raise ValueError(f"unknown objective {self.objective!r}")
        if self.eta <= 0:
            raise ValueError(f"eta must be > 0, got {self.eta}")
        if self.objective == "ns":
            if self.k_negatives < 1:
                raise ValueError(f"k_negatives must be >= 1, got {self.k_negatives}")
            if self.k_negatives >= self.vocab_size:
                raise ValueError("k_negatives must be < vocab_size")

    @property
    def output_rows(self) -> int:
        """Rows of the output-side matrix: V-1 inner units for hs, else V."""
        return self.vocab_size - 1 if self.objective == "hs" else self.vocab_size


@dataclass
class ModelState:
    """Input-vector matrix W (V x N) and output-side matrix W' (rows x N)."""

    input_vectors: np.ndarray
    output_vectors: np.ndarray

    def copy(self) -> "ModelState":
        return ModelState(self.input_vectors.copy(), self.output_vectors.copy())


def init_state(config: ModelConfig, rng: np.random.Generator) -> ModelState:
    """Input vectors uniform in [-0.5/N, 0.5/N); output-side vectors zero.

    Zero output vectors break no symmetry the input side doesn't already
    break, and make first-step losses take closed forms (ln 2 per sigmoid
    decision, ln V for the full softmax).
    """
    n = config.dim
    w = (rng.random((config.vocab_size, n)) - 0.5) / n
    wp = np.zeros((config.output_rows, n))
    return ModelState(input_vectors=w, output_vectors=wp)


# ---------------------------------------------------------------------------
# elementary pieces


_SIGMOID_FLOOR = np.finfo(np.float64).tiny


def sigmoid(u):
    """Numerically stable logistic function, elementwise.

    The true value is never 0, so deep-negative inputs whose exponential
    underflows are floored at the smallest normal double instead of
    collapsing to exactly 0.
    """
    u_arr = np.asarray(u, dtype=np.float64)
    out = np.empty_like(u_arr)
    pos = u_arr >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-u_arr[pos]))
    eu = np.exp(u_arr[~pos])
    out[~pos] = np.maximum(eu / (1.0 + eu), _SIGMOID_FLOOR)
    return float(out) if np.isscalar(u) else out


def log_sigmoid(u):
    """log(sigmoid(u)) without overflow for large |u|."""
    return -np.logaddexp(0.0, -np.asarray(u, dtype=np.float64))


def hidden(state: ModelState, context: Sequence[int]) -> np.ndarray:
    """Average of the context words' input vectors; a row copy when C = 1."""
    rows = state.input_vectors[np.asarray(context, dtype=np.intp)]
    return rows.mean(axis=0)


def softmax_forward(state: ModelState, h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Scores u_j = v'_j . h and max-subtracted softmax probabilities."""
    u = state.output_vectors @ h
    z = np.exp(u - u.max())
    return u, z / z.sum()


def softmax_loss(y: np.ndarray, target: int) -> float:
    return float(-np.log(y[target]))


def softmax_errors(y: np.ndarray, targets: Sequence[int]) -> np.ndarray:
    """Summed prediction errors y - t over one or more target panels.

    One target gives the CBOW error vector e; C targets give the skip-gram
    EI vector, C*y_j minus the multiplicity of j among the targets.
    """
    err = len(targets) * y
    np.subtract.at(err, np.asarray(targets, dtype=np.intp), 1.0)
    return err


def softmax_update_output(
    state: ModelState, errors: np.ndarray, h: np.ndarray, eta: float
) -> None:
    """W' rows move by -eta * err_j * h, for every j."""
    state.output_vectors -= eta * np.outer(errors, h)


def softmax_eh(state: ModelState, errors: np.ndarray) -> np.ndarray:
    """EH = sum_j err_j * v'_j; call before updating the output side."""
    return errors @ state.output_vectors


def hs_loss(state: ModelState, tree_path: PathSpec, h: np.ndarray) -> float:
    """-sum_j log sigmoid(s_j * v'_node_j . h), s_j = +1 for a left step."""
    nodes = np.asarray(tree_path.nodes, dtype=np.intp)
    signs = 2.0 * np.asarray(tree_path.directions, dtype=np.float64) - 1.0
    u = state.output_vectors[nodes] @ h
    return float(-log_sigmoid(signs * u).sum())


def hs_errors(state: ModelState, tree_path: PathSpec, h: np.ndarray) -> np.ndarray:
    """Per-path-node prediction error g_j = sigmoid(v'_j . h) - t_j."""
    nodes = np.asarray(tree_path.nodes, dtype=np.intp)
    u = state.output_vectors[nodes] @ h
    return sigmoid(u) - np.asarray(tree_path.directions, dtype=np.float64)


def hs_update(
    state: ModelState, tree_path: PathSpec, h: np.ndarray, eta: float
) -> np.ndarray:
    """Update the L-1 path rows and return EH from the pre-update vectors."""
    nodes = np.asarray(tree_path.nodes, dtype=np.intp)
    g = hs_errors(state, tree_path, h)
    eh = g @ state.output_vectors[nodes]
    state.output_vectors[nodes] -= eta * np.outer(g, h)
    return eh


def hs_leaf_probabilities(state: ModelState, tree: HuffmanTree, h: np.ndarray) -> np.ndarray:
    """p(w = w_O) for every word via the path sigmoid products; sums to 1."""
    return np.array(
        [np.exp(-hs_loss(state, tree.path(w), h)) for w in range(tree.vocab_size)]
    )


def _ns_rows(target: int, negatives: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    rows = np.asarray([target, *negatives], dtype=np.intp)
    labels = np.zeros(len(rows))
    labels[0] = 1.0
    return rows, labels


def ns_loss(
    state: ModelState, target: int, negatives: Sequence[int], h: np.ndarray
) -> float:
    """-log sigmoid(u_target) - sum_neg log sigmoid(-u_neg).

    A duplicated negative contributes its term once per occurrence.
    """
    rows, labels = _ns_rows(target, negatives)
    u = state.output_vectors[rows] @ h
    signs = 2.0 * labels - 1.0
    return float(-log_sigmoid(signs * u).sum())


def ns_errors(
    state: ModelState, target: int, negatives: Sequence[int], h: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Sampled rows and their errors g_j = sigmoid(v'_j . h) - label_j."""
    rows, labels = _ns_rows(target, negatives)
    u = state.output_vectors[rows] @ h
    return rows, sigmoid(u) - labels


def ns_update(
    state: ModelState,
    target: int,
    negatives: Sequence[int],
    h: np.ndarray,
    eta: float,
) -> np.ndarray:
    """Update the K+1 sampled rows and return EH from pre-update vectors.

    Duplicate negatives are applied per occurrence (np.add.at accumulates).
    """
    rows, g = ns_errors(state, target, negatives, h)
    eh = g @ state.output_vectors[rows]
    np.subtract.at(state.output_vectors, rows, eta * np.outer(g, h))
    return eh


def update_input(
    state: ModelState, context: Sequence[int], eh: np.ndarray, eta: float
) -> None:
    """Each context occurrence's input row moves by -(eta/C) * EH.

    C is the actual context length, so duplicates accumulate and a single
    input word (skip-gram) receives the full -eta * EH.
    """
    rows = np.asarray(context, dtype=np.intp)
    np.subtract.at(state.input_vectors, rows, (eta / len(rows)) * eh)


# ---------------------------------------------------------------------------
# one full SGD step


@dataclass(frozen=True)
class StepReport:
    loss: float
    touched_output_rows: int


@dataclass(frozen=True)
class StepTerms:
    """Pre-update gradients for one step, at a single parameter point.

    ``output_rows``/``output_grads`` list one (row, d-loss/d-row) entry per
    touched output row occurrence; likewise for the input side. Applying
    row -= eta * grad for every entry is exactly one SGD step.
    """

    loss: float
    output_rows: tuple[int, ...]
    output_grads: np.ndarray  # (len(output_rows), N)
    input_rows: tuple[int, ...]
    input_grads: np.ndarray   # (len(input_rows), N)
    touched_output_rows: int


def draw_negatives(
    config: ModelConfig,
    instance: TrainingInstance,
    dist: NoiseDistribution,
    rng: np.random.Generator,
) -> list[list[int]]:
    """One negative list per output word (one for CBOW, C for skip-gram)."""
    if instance.mode == "cbow":
        targets = [instance.target]
    else:
        targets = list(instance.outputs)
    return [
        sample_negatives(dist, config.k_negatives, exclude=t, rng=rng)
        for t in targets
    ]


def step_terms(
    state: ModelState,
    config: ModelConfig,
    instance: TrainingInstance,
    tree: HuffmanTree | None = None,
    negatives: Sequence[Sequence[int]] | None = None,
) -> StepTerms:
    """Loss and all row gradients for one instance, evaluated pre-update.

    For skip-gram with hs/ns the output words are processed one at a time;
    per-word EH values are summed into a single input-row gradient and the
    loss is the sum over output words.
    """
    if instance.mode != config.architecture:
        raise ValueError(
            f"instance mode {instance.mode!r} != config {config.architecture!r}"
        )
    if config.architecture == "cbow":
        input_words = list(instance.context)
        output_words = [instance.target]
    else:
        input_words = [instance.center]
        output_words = list(instance.outputs)
    h = hidden(state, input_words)

    if config.objective == "softmax":
        _, y = softmax_forward(state, h)
        loss = sum(softmax_loss(y, t) for t in output_words)
        err = softmax_errors(y, output_words)
        eh = softmax_eh(state, err)
        out_rows = tuple(range(config.vocab_size))
        out_grads = np.outer(err, h)
        touched = config.vocab_size
    else:
        out_rows_list: list[int] = []
        out_grads_list: list[np.ndarray] = []
        loss = 0.0
        eh = np.zeros(config.dim)
        for c, w_o in enumerate(output_words):
            if config.objective == "hs":
                assert tree is not None, "hs objective requires a Huffman tree"
                path = tree.path(w_o)
                rows = np.asarray(path.nodes, dtype=np.intp)
                g = hs_errors(state, path, h)
                loss += hs_loss(state, path, h)
            else:
                assert negatives is not None, "ns objective requires negatives"
                negs = negatives[c]
                rows, g = ns_errors(state, w_o, negs, h)
                loss += ns_loss(state, w_o, negs, h)
            out_rows_list.extend(int(r) for r in rows)
            out_grads_list.append(np.outer(g, h))
            eh += g @ state.output_vectors[rows]
        out_rows = tuple(out_rows_list)
        out_grads = np.concatenate(out_grads_list, axis=0)
        touched = len(out_rows)

    c_len = len(input_words)
    in_grads = np.tile(eh / c_len, (c_len, 1))
    return StepTerms(
        loss=loss,
        output_rows=out_rows,
        output_grads=out_grads,
        input_rows=tuple(input_words),
        input_grads=in_grads,
        touched_output_rows=touched,
    )


def apply_terms(state: ModelState, terms: StepTerms, eta: float) -> None:
    """One SGD move along the precomputed step gradients."""
    np.subtract.at(
        state.output_vectors,
        np.asarray(terms.output_rows, dtype=np.intp),
        eta * terms.output_grads,
    )
    np.subtract.at(
        state.input_vectors,
        np.asarray(terms.input_rows, dtype=np.intp),
        eta * terms.input_grads,
    )


def train_step(
    state: ModelState,
    config: ModelConfig,
    instance: TrainingInstance,
    rng: np.random.Generator,
    tree: HuffmanTree | None = None,
    noise: NoiseDistribution | None = None,
    eta: float | None = None,
) -> StepReport:
    """Hidden pass, objective errors/EH, output update, input update -- once.

    The reported loss is the pre-update loss.
    """
    negatives = None
    if config.objective == "ns":
        assert noise is not None, "ns objective requires a noise distribution"
        negatives = draw_negatives(config, instance, noise, rng)
    terms = step_terms(state, config, instance, tree=tree, negatives=negatives)
    apply_terms(state, terms, config.eta if eta is None else eta)
    return StepReport(loss=terms.loss, touched_output_rows=terms.touched_output_rows)

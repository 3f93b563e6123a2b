"""Epoch orchestration: instance order, learning-rate schedule, loss accounting.

A :class:`TrainingSession` owns its ModelState exclusively; callers serialize
access. ``step_n`` consumes instances one at a time, wrapping to the next
epoch as needed, so interactive front-ends can drive training incrementally
with the same stream of results a batch :func:`train` call would produce.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import NonFiniteLoss
from .huffman import HuffmanTree, build_tree
from .model import ModelConfig, ModelState, init_state, train_step
from .noise import NoiseDistribution, build_noise, make_rng
from .vocab import TrainingInstance

ETA_FLOOR_FRACTION = 1e-4  # linear decay never goes below this fraction of eta0

ProgressCallback = Callable[[int, float], None]


@dataclass(frozen=True)
class TrainPlan:
    epochs: int = 1
    eta0: float = 0.025
    schedule: str = "constant"      # "constant" | "linear"
    shuffle: str = "off"            # "off" | "per-epoch"
    seed: int = 0
    report_every: int = 0           # 0 disables progress callbacks
    callback: ProgressCallback | None = None

    def __post_init__(self) -> None:
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")
        if self.eta0 < 0:
            raise ValueError(f"eta0 must be >= 0, got {self.eta0}")
        if self.schedule not in ("constant", "linear"):
            raise ValueError(f"unknown schedule {self.schedule!r}")
        if self.shuffle not in ("off", "per-epoch"):
            raise ValueError(f"unknown shuffle policy {self.shuffle!r}")


@dataclass(frozen=True)
class TrainReport:
    epoch_mean_losses: tuple[float, ...]
    instances_done: int
    wall_time: float
    state: ModelState


class TrainingSession:
    """Mutable training state over a fixed instance list.

    The single rng stream drives initialization, per-epoch shuffles, and
    negative sampling, so (instances, config, plan) fully determine every
    output. Two step_n(k) calls are equivalent to one step_n(2k).
    """

    def __init__(
        self,
        instances: Sequence[TrainingInstance],
        config: ModelConfig,
        plan: TrainPlan,
        counts: Sequence[int] | None = None,
        tree: HuffmanTree | None = None,
        noise: NoiseDistribution | None = None,
    ):
        if not instances:
            raise ValueError("corpus yields no training instances")
        self.instances = list(instances)
        self.config = config
        self.plan = plan
        self.rng = make_rng(plan.seed)
        self.state = init_state(config, self.rng)
        if config.objective == "hs" and tree is None:
            if counts is None:
                raise ValueError("hs objective needs word counts or a tree")
            tree = build_tree(counts)
        if config.objective == "ns" and noise is None:
            if counts is None:
                raise ValueError("ns objective needs word counts or a noise table")
            noise = build_noise(counts)
        self.tree = tree
        self.noise = noise
        self.eta = plan.eta0
        self.epoch = 0
        self.position = 0           # index into the current epoch's order
        self.instances_done = 0
        self._order = np.arange(len(self.instances))
        self._begin_epoch()

    def _begin_epoch(self) -> None:
        if self.plan.shuffle == "per-epoch":
            self._order = self.rng.permutation(len(self.instances))
        self.position = 0

    def _current_eta(self) -> float:
        if self.plan.schedule == "constant":
            return self.eta
        total = self.plan.epochs * len(self.instances)
        frac = 1.0 - self.instances_done / total
        return max(self.eta * frac, ETA_FLOOR_FRACTION * self.eta)

    def set_eta(self, eta: float) -> None:
        if eta <= 0:
            raise ValueError(f"eta must be > 0, got {eta}")
        self.eta = eta

    def step_n(self, n: int) -> list[float]:
        """Consume exactly n instances, wrapping epochs; returns their losses."""
        losses: list[float] = []
        for _ in range(n):
            instance = self.instances[self._order[self.position]]
            report = train_step(
                self.state,
                self.config,
                instance,
                self.rng,
                tree=self.tree,
                noise=self.noise,
                eta=self._current_eta(),
            )
            if not np.isfinite(report.loss):
                raise NonFiniteLoss(
                    f"non-finite loss at epoch {self.epoch} "
                    f"instance {self.position} (eta={self._current_eta()})"
                )
            losses.append(report.loss)
            self.instances_done += 1
            self.position += 1
            if self.position >= len(self.instances):
                self.epoch += 1
                self._begin_epoch()
        return losses


def train(
    instances: Sequence[TrainingInstance],
    config: ModelConfig,
    plan: TrainPlan,
    counts: Sequence[int] | None = None,
) -> TrainReport:
    """Run plan.epochs full passes; collect the mean pre-update loss per epoch."""
    session = TrainingSession(instances, config, plan, counts=counts)
    start = time.perf_counter()
    per_epoch: list[float] = []
    n = len(session.instances)
    pending: list[float] = []
    for _ in range(plan.epochs):
        losses = session.step_n(n)
        per_epoch.append(float(np.mean(losses)))
        if plan.report_every and plan.callback is not None:
            pending.extend(losses)
            while len(pending) >= plan.report_every:
                chunk, pending = pending[: plan.report_every], pending[plan.report_every :]
                plan.callback(session.instances_done - len(pending), float(np.mean(chunk)))
    return TrainReport(
        epoch_mean_losses=tuple(per_epoch),
        instances_done=session.instances_done,
        wall_time=time.perf_counter() - start,
        state=session.state,
    )

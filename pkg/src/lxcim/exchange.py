"""Local exchange of classes: the transform, duplication, and checkers.

Exchanging a sample reflects its score to the other side of the decision
threshold (at equal confidence) and flips its label, so the decision's
correctness is untouched.  Metrics that only depend on how well decisions are
made, never on which class they favour, must be invariant when any subset of
samples is exchanged.  Accuracy, LxCIM and AUDRC are; AUROC and most
categorical scores are not, and the checkers here hunt for witness
counterexamples.

The categorical analogue moves confusion-matrix weight between (tp, tn) and
between (fp, fn): correct stays correct, wrong stays wrong, only the class
bookkeeping changes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .errors import EmptyDatasetError, InfeasiblePerturbationError, InvalidMaskError, LxcimError
from .metrics import ConfusionMatrix
from .model import Dataset, DecisionSpec, Sample

__all__ = [
    "ExchangeMask",
    "ExchangeWitness",
    "InvarianceReport",
    "PerturbationWitness",
    "CategoricalInvarianceReport",
    "exchange_sample",
    "exchange_subset",
    "duplicate_dataset",
    "check_rank_lxc_invariance",
    "perturb_confusion",
    "check_categorical_lxc_invariance",
    "f1_score",
    "matthews_corrcoef",
]


@dataclass(frozen=True)
class ExchangeMask:
    """Set of 0-based dataset positions selected for exchange."""

    indices: frozenset[int]

    def __init__(self, indices: Iterable[int] = ()):
        cleaned = set()
        for i in indices:
            j = int(i)
            if j != i or j < 0:
                raise InvalidMaskError(f"mask indices must be integers >= 0, got {i!r}")
            cleaned.add(j)
        object.__setattr__(self, "indices", frozenset(cleaned))

    def __iter__(self):
        return iter(sorted(self.indices))

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, item) -> bool:
        return item in self.indices

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(sorted(self.indices))


def exchange_sample(sample: Sample, spec: DecisionSpec) -> Sample:
    """Exchange one sample's class: reflect the score, flip the label.

    A sample sitting exactly at the threshold is its own exchange.  The map is
    an involution and preserves weight, confidence, and correctness.
    """
    if sample.score == spec.s_star:
        return sample
    return Sample(
        score=spec.reflect_at(sample.score),
        label=1 - sample.label,
        weight=sample.weight,
    )


def _coerce_mask(mask) -> ExchangeMask:
    return mask if isinstance(mask, ExchangeMask) else ExchangeMask(mask)


def exchange_subset(dataset: Dataset, mask, spec: DecisionSpec) -> Dataset:
    """Exchange the samples at the masked positions, leaving the rest alone."""
    mask = _coerce_mask(mask)
    if len(mask) == 0:
        return dataset
    idx = np.fromiter(mask.indices, dtype=np.int64, count=len(mask))
    if idx.max() >= len(dataset):
        raise InvalidMaskError(
            f"mask index {int(idx.max())} out of range for dataset of size {len(dataset)}"
        )
    scores = dataset.scores.copy()
    labels = dataset.labels.copy()
    movable = idx[scores[idx] != spec.s_star]
    scores[movable] = spec.reflect_at(dataset.scores[movable])
    labels[movable] = 1 - dataset.labels[movable]
    return Dataset(scores, labels, dataset.weights)


def duplicate_dataset(dataset: Dataset, spec: DecisionSpec) -> Dataset:
    """Union of a dataset with its full exchange, in original-then-mirror order.

    When no sample sits at the threshold the result carries equal positive and
    negative weight, and its AUROC equals the original dataset's LxCIM.
    """
    if len(dataset) == 0:
        raise EmptyDatasetError("cannot duplicate an empty dataset")
    mirrored = exchange_subset(dataset, range(len(dataset)), spec)
    return Dataset(
        np.concatenate((dataset.scores, mirrored.scores)),
        np.concatenate((dataset.labels, mirrored.labels)),
        np.concatenate((dataset.weights, mirrored.weights)),
    )


@dataclass(frozen=True)
class ExchangeWitness:
    """First observed invariance break: the mask plus what the metric did."""

    trial: int
    mask: ExchangeMask
    value: float | None
    error: str | None

    def describe(self) -> str:
        what = f"metric raised {self.error}" if self.error is not None else f"value {self.value!r}"
        return f"trial {self.trial}, mask {list(self.mask.as_tuple())}: {what}"


@dataclass(frozen=True)
class InvarianceReport:
    baseline: float
    trials: int
    tolerance: float
    max_deviation: float
    witness: ExchangeWitness | None

    @property
    def passed(self) -> bool:
        return self.witness is None


def check_rank_lxc_invariance(
    metric: Callable[[Dataset], float],
    dataset: Dataset,
    spec: DecisionSpec,
    trials: int = 100,
    seed: int = 0,
    tolerance: float = 1e-9,
) -> InvarianceReport:
    """Probe a dataset metric with random exchange masks.

    Masks are drawn uniformly over all 2^N subsets (independent fair bit per
    position).  A deviation beyond ``tolerance``, or the metric failing on an
    exchanged dataset it accepted originally (e.g. AUROC turning single-class),
    is recorded as a witness.  Trials run sequentially from one seeded
    generator, so a witness is reproducible from (seed, trial).
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    baseline = float(metric(dataset))
    rng = np.random.default_rng(seed)
    max_deviation = 0.0
    witness: ExchangeWitness | None = None
    for trial in range(trials):
        mask = ExchangeMask(np.nonzero(rng.random(len(dataset)) < 0.5)[0])
        exchanged = exchange_subset(dataset, mask, spec)
        try:
            value = float(metric(exchanged))
        except LxcimError as exc:
            max_deviation = math.inf
            if witness is None:
                witness = ExchangeWitness(
                    trial=trial, mask=mask, value=None, error=type(exc).__name__
                )
            continue
        deviation = abs(value - baseline)
        max_deviation = max(max_deviation, deviation)
        if deviation > tolerance and witness is None:
            witness = ExchangeWitness(trial=trial, mask=mask, value=value, error=None)
    return InvarianceReport(
        baseline=baseline,
        trials=trials,
        tolerance=tolerance,
        max_deviation=max_deviation,
        witness=witness,
    )


def perturb_confusion(cm: ConfusionMatrix, delta1: float, delta2: float) -> ConfusionMatrix:
    """Move weight delta1 from tn to tp and delta2 from fp to fn.

    This is the categorical exchange: total correct and total incorrect weight
    are preserved.  Raises InfeasiblePerturbationError if any entry would go
    negative (zero is allowed).
    """
    moved = (
        cm.tp + delta1,
        cm.fp - delta2,
        cm.fn + delta2,
        cm.tn - delta1,
    )
    for name, value in zip(("tp", "fp", "fn", "tn"), moved):
        if value < 0.0:
            raise InfeasiblePerturbationError(
                f"perturbation (delta1={delta1!r}, delta2={delta2!r}) drives {name} to {value!r}"
            )
    return ConfusionMatrix(*moved)


@dataclass(frozen=True)
class PerturbationWitness:
    delta1: float
    delta2: float
    value: float

    def describe(self) -> str:
        return f"delta1={self.delta1!r}, delta2={self.delta2!r}: value {self.value!r}"


@dataclass(frozen=True)
class CategoricalInvarianceReport:
    baseline: float
    trials: int
    tolerance: float
    max_deviation: float
    witness: PerturbationWitness | None

    @property
    def passed(self) -> bool:
        return self.witness is None


def _feasible(cm: ConfusionMatrix, delta1: float, delta2: float) -> bool:
    return (
        cm.tp + delta1 >= 0.0
        and cm.tn - delta1 >= 0.0
        and cm.fn + delta2 >= 0.0
        and cm.fp - delta2 >= 0.0
    )


def check_categorical_lxc_invariance(
    metric: Callable[[ConfusionMatrix], float],
    cm: ConfusionMatrix,
    trials: int = 100,
    seed: int = 0,
    tolerance: float = 1e-9,
) -> CategoricalInvarianceReport:
    """Probe a confusion-matrix metric under correctness-preserving moves.

    Sweeps a small exhaustive integer grid |delta| <= min entry first (where
    witnesses live for the classic scores), then ``trials`` random real
    perturbations drawn uniformly over the feasible box.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    baseline = float(metric(cm))
    max_deviation = 0.0
    witness: PerturbationWitness | None = None

    def probe(delta1: float, delta2: float) -> None:
        nonlocal max_deviation, witness
        value = float(metric(perturb_confusion(cm, delta1, delta2)))
        deviation = abs(value - baseline)
        max_deviation = max(max_deviation, deviation)
        if deviation > tolerance and witness is None:
            witness = PerturbationWitness(delta1=delta1, delta2=delta2, value=value)

    reach = int(math.floor(min(cm.as_tuple())))
    for d1, d2 in itertools.product(range(-reach, reach + 1), repeat=2):
        if (d1, d2) != (0, 0) and _feasible(cm, d1, d2):
            probe(float(d1), float(d2))

    rng = np.random.default_rng(seed)
    for _ in range(trials):
        delta1 = rng.uniform(-cm.tp, cm.tn)
        delta2 = rng.uniform(-cm.fn, cm.fp)
        if _feasible(cm, delta1, delta2):
            probe(delta1, delta2)

    return CategoricalInvarianceReport(
        baseline=baseline,
        trials=trials,
        tolerance=tolerance,
        max_deviation=max_deviation,
        witness=witness,
    )


def f1_score(cm: ConfusionMatrix) -> float:
    """Positive-class F1; a classic non-invariant witness metric."""
    denom = 2.0 * cm.tp + cm.fp + cm.fn
    return 0.0 if denom == 0.0 else 2.0 * cm.tp / denom


def matthews_corrcoef(cm: ConfusionMatrix) -> float:
    """Matthews correlation coefficient; 0 when a marginal vanishes."""
    denom = math.sqrt(
        (cm.tp + cm.fp) * (cm.tp + cm.fn) * (cm.tn + cm.fp) * (cm.tn + cm.fn)
    )
    if denom == 0.0:
        return 0.0
    return (cm.tp * cm.tn - cm.fp * cm.fn) / denom

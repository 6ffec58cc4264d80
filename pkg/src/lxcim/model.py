"""Core data model: samples, datasets, decision specs, and confidence ranking.

A binary decision rule here is "predict 1 iff score > s_star".  A
:class:`DecisionSpec` bundles that threshold with a confidence map (how far a
score sits from the threshold, in whatever units the caller likes) and a
reflection map that sends a score to the equally-confident score on the other
side of the threshold.  Ranking a dataset by descending confidence is the
substrate for every decision-rate metric in :mod:`lxcim.metrics`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .errors import EmptyDatasetError

__all__ = [
    "Sample",
    "Dataset",
    "DecisionSpec",
    "RankedView",
    "SpecViolation",
    "SpecValidationReport",
    "predict",
    "make_abs_spec",
    "validate_decision_spec",
    "rank_by_confidence",
]


@dataclass(frozen=True)
class Sample:
    """One scored prediction: raw score, true label (0/1), positive weight."""

    score: float
    label: int
    weight: float = 1.0

    def __post_init__(self) -> None:
        score = float(self.score)
        weight = float(self.weight)
        if not math.isfinite(score):
            raise ValueError(f"score must be finite, got {self.score!r}")
        if isinstance(self.label, bool) or self.label not in (0, 1):
            raise ValueError(f"label must be 0 or 1, got {self.label!r}")
        if not (math.isfinite(weight) and weight > 0.0):
            raise ValueError(f"weight must be finite and > 0, got {self.weight!r}")
        object.__setattr__(self, "score", score)
        object.__setattr__(self, "label", int(self.label))
        object.__setattr__(self, "weight", weight)


def _as_float_array(values, name: str) -> np.ndarray:
    try:
        arr = np.asarray(values, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{name} must be numeric: {exc}") from None
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    return arr.copy()


class Dataset:
    """Immutable, ordered collection of weighted scored samples.

    Scores must be finite, labels 0/1, weights finite and strictly positive.
    An empty dataset can be constructed but every metric rejects it.
    """

    __slots__ = ("scores", "labels", "weights")

    def __init__(self, scores, labels, weights=None):
        score_arr = _as_float_array(scores, "scores")
        raw_labels = np.asarray(labels)
        if raw_labels.ndim != 1:
            raise ValueError(f"labels must be one-dimensional, got shape {raw_labels.shape}")
        if len(raw_labels) != len(score_arr):
            raise ValueError(
                f"length mismatch: {len(score_arr)} scores vs {len(raw_labels)} labels"
            )
        ok = (raw_labels == 0) | (raw_labels == 1)
        if not np.all(ok):
            bad = raw_labels[~np.asarray(ok)][:1]
            raise ValueError(f"labels must be 0 or 1, got {bad[0]!r}")
        label_arr = np.asarray(raw_labels, dtype=np.int64).copy()

        if weights is None:
            weight_arr = np.ones(len(score_arr), dtype=float)
        else:
            weight_arr = _as_float_array(weights, "weights")
            if len(weight_arr) != len(score_arr):
                raise ValueError(
                    f"length mismatch: {len(score_arr)} scores vs {len(weight_arr)} weights"
                )
        if not np.all(np.isfinite(score_arr)):
            raise ValueError("scores must all be finite")
        if not np.all(np.isfinite(weight_arr)):
            raise ValueError("weights must all be finite")
        if len(weight_arr) and not np.all(weight_arr > 0.0):
            raise ValueError("weights must all be > 0")

        for arr in (score_arr, label_arr, weight_arr):
            arr.setflags(write=False)
        object.__setattr__(self, "scores", score_arr)
        object.__setattr__(self, "labels", label_arr)
        object.__setattr__(self, "weights", weight_arr)

    def __setattr__(self, name, value):
        raise AttributeError("Dataset is immutable")

    @classmethod
    def from_samples(cls, samples: Iterable[Sample | Sequence]) -> "Dataset":
        """Build a dataset from Sample objects or (score, label[, weight]) tuples."""
        scores: list[float] = []
        labels: list[int] = []
        weights: list[float] = []
        for item in samples:
            if not isinstance(item, Sample):
                item = Sample(*item)
            scores.append(item.score)
            labels.append(item.label)
            weights.append(item.weight)
        return cls(scores, labels, weights)

    @property
    def n(self) -> int:
        return len(self.scores)

    @property
    def total_weight(self) -> float:
        return float(np.sum(self.weights))

    @property
    def samples(self) -> tuple[Sample, ...]:
        return tuple(self)

    def __len__(self) -> int:
        return len(self.scores)

    def __iter__(self) -> Iterator[Sample]:
        for s, y, w in zip(self.scores, self.labels, self.weights):
            yield Sample(float(s), int(y), float(w))

    def __getitem__(self, index: int) -> Sample:
        return Sample(
            float(self.scores[index]), int(self.labels[index]), float(self.weights[index])
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return (
            np.array_equal(self.scores, other.scores)
            and np.array_equal(self.labels, other.labels)
            and np.array_equal(self.weights, other.weights)
        )

    __hash__ = None  # value semantics, mutable-equality style

    def __repr__(self) -> str:
        return f"Dataset(n={len(self)}, total_weight={self.total_weight:g})"


def _apply_map(fn: Callable, values: np.ndarray) -> np.ndarray:
    """Apply a scalar-or-vectorized map over a 1-d float array."""
    try:
        out = np.asarray(fn(values), dtype=float)
        if out.shape == values.shape:
            return out
    except Exception:
        pass
    return np.array([float(fn(float(v))) for v in values], dtype=float)


@dataclass(frozen=True)
class DecisionSpec:
    """Decision threshold plus confidence and reflection maps.

    ``confidence`` must be zero at ``s_star``, positive elsewhere, strictly
    decreasing below the threshold and strictly increasing above it.
    ``reflect`` must map each score to the opposite-side score with the same
    confidence (an involution that fixes ``s_star``).  Both maps may be plain
    scalar functions; vectorized callables are used as-is.
    """

    s_star: float
    confidence: Callable
    reflect: Callable

    def __post_init__(self) -> None:
        if not math.isfinite(float(self.s_star)):
            raise ValueError(f"s_star must be finite, got {self.s_star!r}")
        object.__setattr__(self, "s_star", float(self.s_star))

    def confidence_at(self, scores):
        if np.ndim(scores) == 0:
            return float(self.confidence(float(scores)))
        return _apply_map(self.confidence, np.asarray(scores, dtype=float))

    def reflect_at(self, scores):
        if np.ndim(scores) == 0:
            return float(self.reflect(float(scores)))
        return _apply_map(self.reflect, np.asarray(scores, dtype=float))


def predict(score, spec: DecisionSpec):
    """Binary prediction: 1 iff the score is strictly above the threshold.

    A score exactly at the threshold predicts the negative class.  Accepts a
    scalar (returns int) or an array (returns an int array).
    """
    if np.ndim(score) == 0:
        s = float(score)
        if not math.isfinite(s):
            raise ValueError(f"score must be finite, got {score!r}")
        return int(s > spec.s_star)
    return (np.asarray(score, dtype=float) > spec.s_star).astype(np.int64)


def make_abs_spec(s_star: float = 0.0) -> DecisionSpec:
    """Canonical spec: confidence |s - s_star|, mirror reflection about s_star.

    The reflection is computed as ``s_star - (s - s_star)``, which keeps
    confidence symmetry and the involution bit-exact at s_star = 0 and for the
    usual probability setup (scores in [0, 1] with s_star = 0.5).
    """
    a = float(s_star)
    if not math.isfinite(a):
        raise ValueError(f"s_star must be finite, got {s_star!r}")
    return DecisionSpec(s_star=a, confidence=lambda s: abs(s - a), reflect=lambda s: a - (s - a))


@dataclass(frozen=True)
class SpecViolation:
    """One violated DecisionSpec contract, located at a grid score."""

    check: str
    s: float
    detail: str


@dataclass(frozen=True)
class SpecValidationReport:
    violations: tuple[SpecViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def checks_failed(self) -> tuple[str, ...]:
        return tuple(sorted({v.check for v in self.violations}))


def validate_decision_spec(
    spec: DecisionSpec,
    grid,
    *,
    rel_tol: float = 1e-12,
    abs_tol: float = 1e-12,
) -> SpecValidationReport:
    """Probe every DecisionSpec contract on a finite score grid.

    Violations are reported, not raised, so a caller can inspect all of them
    at once.  The grid must be sorted ascending and contain ``s_star``.

    Checks: zero minimum exactly at the threshold, positivity elsewhere,
    strict decrease below / increase above the threshold, confidence symmetry
    under reflection, reflection being a sign-flipping involution that fixes
    the threshold.
    """
    grid_arr = _as_float_array(grid, "grid")
    if len(grid_arr) == 0:
        raise ValueError("grid must be nonempty")
    if not np.all(np.isfinite(grid_arr)):
        raise ValueError("grid must be finite")
    if np.any(np.diff(grid_arr) < 0):
        raise ValueError("grid must be sorted ascending")
    if not np.any(grid_arr == spec.s_star):
        raise ValueError("grid must contain s_star")

    conf = spec.confidence_at(grid_arr)
    refl = spec.reflect_at(grid_arr)
    violations: list[SpecViolation] = []

    def close(a: float, b: float) -> bool:
        return math.isclose(a, b, rel_tol=rel_tol, abs_tol=abs_tol)

    for s, c in zip(grid_arr, conf):
        if s == spec.s_star:
            if c != 0.0:
                violations.append(
                    SpecViolation("minimum-at-threshold", float(s), f"confidence(s_star) = {c!r}, expected 0")
                )
        elif not c > 0.0:
            violations.append(
                SpecViolation("minimum-at-threshold", float(s), f"confidence = {c!r}, expected > 0 away from s_star")
            )

    below = grid_arr < spec.s_star
    above = grid_arr > spec.s_star
    bs, bc = grid_arr[below], conf[below]
    for i in range(1, len(bs)):
        if not bc[i] < bc[i - 1]:
            violations.append(
                SpecViolation(
                    "bi-monotonic",
                    float(bs[i]),
                    f"confidence must strictly decrease below s_star: f({bs[i - 1]!r})={bc[i - 1]!r}, f({bs[i]!r})={bc[i]!r}",
                )
            )
    as_, ac = grid_arr[above], conf[above]
    for i in range(1, len(as_)):
        if not ac[i] > ac[i - 1]:
            violations.append(
                SpecViolation(
                    "bi-monotonic",
                    float(as_[i]),
                    f"confidence must strictly increase above s_star: f({as_[i - 1]!r})={ac[i - 1]!r}, f({as_[i]!r})={ac[i]!r}",
                )
            )

    conf_of_refl = spec.confidence_at(refl)
    refl_of_refl = spec.reflect_at(refl)
    for s, c, r, cr, rr in zip(grid_arr, conf, refl, conf_of_refl, refl_of_refl):
        if not math.isfinite(r):
            violations.append(SpecViolation("reflect-finite", float(s), f"reflect = {r!r}"))
            continue
        if s == spec.s_star:
            if r != spec.s_star:
                violations.append(
                    SpecViolation("fixed-point", float(s), f"reflect(s_star) = {r!r}, expected s_star")
                )
            continue
        if not close(cr, c):
            violations.append(
                SpecViolation("confidence-symmetry", float(s), f"confidence(reflect(s))={cr!r} != confidence(s)={c!r}")
            )
        if not close(rr, s):
            violations.append(
                SpecViolation("involution", float(s), f"reflect(reflect(s))={rr!r} != s={s!r}")
            )
        if math.copysign(1.0, r - spec.s_star) == math.copysign(1.0, s - spec.s_star) or r == spec.s_star:
            violations.append(
                SpecViolation("sign-flip", float(s), f"reflect(s)={r!r} is not on the opposite side of s_star")
            )

    return SpecValidationReport(tuple(violations))


@dataclass(frozen=True, eq=False)
class RankedView:
    """A dataset ordered by strictly descending decision confidence.

    ``order`` maps ranked positions to original dataset positions.  Runs of
    equal confidence are tie groups; within a group samples sit in a canonical
    suborder keyed on (correctness, weight) first, the two attributes an
    exchange preserves per sample, so every cumulative array here is identical
    before and after exchanging any subset and independent of input order.
    Score and label only break the remaining ties, between samples whose
    relative order cannot affect the prefix sums.

    ``cum_weight`` and ``cum_correct_weight`` are per-sample prefix sums of
    weight and of weight restricted to correctly predicted samples.
    ``group_ends`` holds the exclusive end position of each tie group.
    """

    order: np.ndarray
    confidence: np.ndarray
    correct: np.ndarray
    weight: np.ndarray
    cum_weight: np.ndarray
    cum_correct_weight: np.ndarray
    group_ends: np.ndarray

    @property
    def n(self) -> int:
        return len(self.order)

    @property
    def total_weight(self) -> float:
        return float(self.cum_weight[-1])

    @property
    def tie_groups(self) -> tuple[tuple[int, int], ...]:
        starts = np.concatenate(([0], self.group_ends[:-1]))
        return tuple((int(a), int(b)) for a, b in zip(starts, self.group_ends))


def rank_by_confidence(dataset: Dataset, spec: DecisionSpec) -> RankedView:
    """Order a dataset by descending confidence and mark tie groups.

    Raises EmptyDatasetError for an empty dataset and ValueError if the
    confidence map produces non-finite values.
    """
    if len(dataset) == 0:
        raise EmptyDatasetError("cannot rank an empty dataset")
    conf = spec.confidence_at(dataset.scores)
    if not np.all(np.isfinite(conf)):
        raise ValueError("confidence map produced non-finite values")

    predicted = dataset.scores > spec.s_star
    correct_all = predicted == dataset.labels.astype(bool)
    # last lexsort key is primary: descending confidence, then wrong before
    # right and light before heavy; exchanges preserve both of those keys,
    # so tied samples land on the same boundaries after any exchange
    order = np.lexsort(
        (dataset.labels, dataset.scores, dataset.weights, correct_all, -conf)
    )
    conf_r = conf[order]
    weight_r = dataset.weights[order]
    correct = correct_all[order]

    cum_weight = np.cumsum(weight_r)
    cum_correct = np.cumsum(weight_r * correct)
    breaks = np.nonzero(conf_r[1:] != conf_r[:-1])[0] + 1
    group_ends = np.concatenate((breaks, [len(conf_r)]))

    for arr in (order, conf_r, correct, weight_r, cum_weight, cum_correct, group_ends):
        arr.setflags(write=False)
    return RankedView(
        order=order,
        confidence=conf_r,
        correct=correct,
        weight=weight_r,
        cum_weight=cum_weight,
        cum_correct_weight=cum_correct,
        group_ends=group_ends,
    )

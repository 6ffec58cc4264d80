"""Weighted evaluation metrics over decision-confidence rankings.

Two families live here.  Threshold metrics (confusion matrix, accuracy) look
only at the fixed decision rule.  Ranking metrics integrate over how the rule
behaves as coverage grows: AUROC sweeps score thresholds, while LxCIM and
AUDRC sweep decision rates, admitting samples in order of descending decision
confidence.

LxCIM is twice the area under the cumulative accuracy curve G: admit the i
most confident weight fraction, plot the correctly-decided weight fraction
G(i), integrate, double.  Perfect rules score 1, coin flips 0.5, perfectly
inverted rules 0.  AUDRC averages the running accuracy G(i)/i over the same
sweep, which weights early (high-confidence) decisions hardest.

Tie policy: samples with equal confidence are admitted as one block, so G
rises linearly across the block.  That equals averaging over every possible
order within the block, so no ordering information is invented.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import EmptyDatasetError, SingleClassError
from .model import Dataset, DecisionSpec, RankedView, rank_by_confidence

__all__ = [
    "ConfusionMatrix",
    "CurveKind",
    "Curve",
    "MetricsReport",
    "confusion_matrix",
    "accuracy",
    "roc_curve",
    "auroc",
    "cumulative_accuracy_curve",
    "lxcim",
    "accuracy_rate_curve",
    "audrc",
    "report",
]


@dataclass(frozen=True)
class ConfusionMatrix:
    """Weighted 2x2 confusion matrix; entries are weight totals, not counts."""

    tp: float
    fp: float
    fn: float
    tn: float

    def __post_init__(self) -> None:
        for name in ("tp", "fp", "fn", "tn"):
            value = float(getattr(self, name))
            if not (np.isfinite(value) and value >= 0.0):
                raise ValueError(f"{name} must be finite and >= 0, got {value!r}")
            object.__setattr__(self, name, value)

    @property
    def total(self) -> float:
        return self.tp + self.fp + self.fn + self.tn

    @property
    def correct(self) -> float:
        return self.tp + self.tn

    @property
    def incorrect(self) -> float:
        return self.fp + self.fn

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.tp, self.fp, self.fn, self.tn)


class CurveKind(enum.Enum):
    ROC = "roc"
    CUM_ACC = "cumulative_accuracy"
    ACC_RATE = "accuracy_rate"


@dataclass(frozen=True, eq=False)
class Curve:
    """Piecewise-linear curve, stored as exact breakpoints in sweep order."""

    kind: CurveKind
    x: np.ndarray
    y: np.ndarray

    def __post_init__(self) -> None:
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if x.shape != y.shape or x.ndim != 1 or len(x) == 0:
            raise ValueError("x and y must be equal-length nonempty 1-d arrays")
        if np.any(np.diff(x) < 0):
            raise ValueError("x must be non-decreasing")
        if self.kind in (CurveKind.ROC, CurveKind.CUM_ACC):
            if np.any(x < 0) or np.any(x > 1) or np.any(y < 0) or np.any(y > 1):
                raise ValueError(f"{self.kind.value} breakpoints must lie in the unit square")
        for arr in (x, y):
            arr.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def points(self) -> tuple[tuple[float, float], ...]:
        return tuple((float(a), float(b)) for a, b in zip(self.x, self.y))

    def __len__(self) -> int:
        return len(self.x)


@dataclass(frozen=True)
class MetricsReport:
    """All four headline metrics; auroc is None when only one class is present."""

    accuracy: float
    lxcim: float
    audrc: float
    auroc: float | None

    def as_dict(self) -> dict:
        return {
            "lxcim": self.lxcim,
            "accuracy": self.accuracy,
            "auroc": self.auroc,
            "audrc": self.audrc,
        }


def _require_nonempty(dataset: Dataset) -> None:
    if len(dataset) == 0:
        raise EmptyDatasetError("metric requested on an empty dataset")


def confusion_matrix(dataset: Dataset, spec: DecisionSpec) -> ConfusionMatrix:
    """Weighted confusion matrix of the fixed rule "predict 1 iff s > s_star"."""
    _require_nonempty(dataset)
    predicted = dataset.scores > spec.s_star
    actual = dataset.labels.astype(bool)
    w = dataset.weights
    return ConfusionMatrix(
        tp=float(np.sum(w[predicted & actual])),
        fp=float(np.sum(w[predicted & ~actual])),
        fn=float(np.sum(w[~predicted & actual])),
        tn=float(np.sum(w[~predicted & ~actual])),
    )


def accuracy(dataset: Dataset, spec: DecisionSpec) -> float:
    """Weight fraction of correct decisions, in [0, 1].

    Computed from the same cumulative sums as the decision-rate curves, so it
    coincides bit-for-bit with the cumulative accuracy curve's endpoint G(1).
    """
    view = rank_by_confidence(dataset, spec)
    return float(view.cum_correct_weight[-1] / view.cum_weight[-1])


def _score_sweep(dataset: Dataset) -> tuple[np.ndarray, np.ndarray, float, float]:
    """Cumulative true/false positive weights per distinct score, descending."""
    _require_nonempty(dataset)
    unique_scores, inverse = np.unique(dataset.scores, return_inverse=True)
    w = dataset.weights
    y = dataset.labels
    pos_per_score = np.bincount(inverse, weights=w * y, minlength=len(unique_scores))
    neg_per_score = np.bincount(inverse, weights=w * (1 - y), minlength=len(unique_scores))
    # np.unique sorts ascending; the sweep admits high scores first
    tp = np.cumsum(pos_per_score[::-1])
    fp = np.cumsum(neg_per_score[::-1])
    pos_total = float(tp[-1])
    neg_total = float(fp[-1])
    if pos_total == 0.0 or neg_total == 0.0:
        raise SingleClassError("ROC requires positive weight in both classes")
    return tp, fp, pos_total, neg_total


def roc_curve(dataset: Dataset) -> Curve:
    """ROC breakpoints from the descending score sweep, starting at (0, 0).

    Samples sharing a score enter together, producing one diagonal segment
    for the whole block.
    """
    tp, fp, pos_total, neg_total = _score_sweep(dataset)
    x = np.concatenate(([0.0], fp / neg_total))
    y = np.concatenate(([0.0], tp / pos_total))
    return Curve(kind=CurveKind.ROC, x=x, y=y)


def auroc(dataset: Dataset) -> float:
    """Area under the ROC curve (trapezoid rule on exact breakpoints).

    Equal to the weighted probability that a random positive outscores a
    random negative, counting score ties as one half.
    """
    tp, fp, pos_total, neg_total = _score_sweep(dataset)
    tp_prev = np.concatenate(([0.0], tp[:-1]))
    fp_prev = np.concatenate(([0.0], fp[:-1]))
    raw_area = float(np.sum((fp - fp_prev) * (tp + tp_prev))) / 2.0
    return raw_area / (pos_total * neg_total)


def _group_boundaries(view: RankedView) -> tuple[np.ndarray, np.ndarray]:
    """Unnormalized (cum weight, cum correct weight) at tie-group ends, 0-led."""
    ends = view.group_ends
    cw = np.concatenate(([0.0], view.cum_weight[ends - 1]))
    cc = np.concatenate(([0.0], view.cum_correct_weight[ends - 1]))
    return cw, cc


def cumulative_accuracy_curve(dataset: Dataset, spec: DecisionSpec) -> Curve:
    """Correct weight fraction G(i) against admitted weight fraction i.

    One breakpoint per tie group plus the origin.  Segments have slope 1
    across correct samples, 0 across incorrect ones, and the group's correct
    fraction across ties.  G(1) equals accuracy exactly.
    """
    view = rank_by_confidence(dataset, spec)
    cw, cc = _group_boundaries(view)
    total = view.cum_weight[-1]
    return Curve(kind=CurveKind.CUM_ACC, x=cw / total, y=cc / total)


def lxcim(dataset: Dataset, spec: DecisionSpec) -> float:
    """Twice the area under the cumulative accuracy curve, in [0, 1].

    1 means every decision is correct, 0.5 is chance level, 0 means every
    decision is wrong.  Computed segment-exactly: with group boundaries c_k
    (weight) and g_k (correct weight), the doubled area is
    sum_k (c_k - c_{k-1}) * (g_{k-1} + g_k) / C^2.
    """
    view = rank_by_confidence(dataset, spec)
    cw, cc = _group_boundaries(view)
    total = view.cum_weight[-1]
    doubled_area = float(np.sum((cw[1:] - cw[:-1]) * (cc[1:] + cc[:-1])))
    return doubled_area / float(total * total)


def accuracy_rate_curve(dataset: Dataset, spec: DecisionSpec) -> Curve:
    """Running accuracy G(i)/i at each tie-group boundary.

    The curve starts at the first group's boundary, not at i = 0 where the
    ratio is undefined.  For a tie-free top sample the first value is exactly
    0 or 1; the final value is the overall accuracy.
    """
    view = rank_by_confidence(dataset, spec)
    cw, cc = _group_boundaries(view)
    total = view.cum_weight[-1]
    return Curve(kind=CurveKind.ACC_RATE, x=cw[1:] / total, y=cc[1:] / cw[1:])


def audrc(dataset: Dataset, spec: DecisionSpec) -> float:
    """Weighted mean of running accuracy across the decision-rate sweep.

    Riemann sum sum_j (w_j / W) * G(c_j) / c_j over per-sample boundaries c_j
    of the tie-averaged cumulative curve.  Compared with LxCIM the 1/c_j
    factor concentrates mass on the most confident decisions.  (A segment
    closed form with log terms exists; the discrete sum is the contract.)
    """
    view = rank_by_confidence(dataset, spec)
    cw, cc = _group_boundaries(view)
    n_groups = len(view.group_ends)
    sizes = np.diff(np.concatenate(([0], view.group_ends)))
    gid = np.repeat(np.arange(n_groups), sizes)

    slope = (cc[1:] - cc[:-1]) / (cw[1:] - cw[:-1])
    g_at = cc[gid] + slope[gid] * (view.cum_weight - cw[gid])
    # group-final boundaries take the exact cumulative value, no interpolation
    g_at[view.group_ends - 1] = cc[1:]
    acc_at = g_at / view.cum_weight
    total = view.cum_weight[-1]
    return float(np.sum(view.weight * acc_at)) / float(total)


def report(dataset: Dataset, spec: DecisionSpec) -> MetricsReport:
    """All four metrics at once; auroc degrades to None for one-class data."""
    try:
        auroc_value: float | None = auroc(dataset)
    except SingleClassError:
        auroc_value = None
    return MetricsReport(
        accuracy=accuracy(dataset, spec),
        lxcim=lxcim(dataset, spec),
        audrc=audrc(dataset, spec),
        auroc=auroc_value,
    )

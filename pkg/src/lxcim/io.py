"""Prediction-file ingestion and serialization (CSV and JSONL).

CSV files carry a ``score,label[,weight]`` header; JSONL files carry one
object per line with ``score``, ``label``, and optional ``weight`` keys.
Labels are arbitrary text (or JSON scalars); ingestion maps the configured
positive label to 1 and the single remaining value to 0.  Floats are written
with shortest round-trip precision, so write -> ingest reproduces scores and
weights bit-exactly.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    NonFiniteValueError,
    NonPositiveWeightError,
    ParseError,
    PredictionFileError,
    UnknownLabelError,
)
from .metrics import Curve
from .model import Dataset, DecisionSpec, make_abs_spec

__all__ = [
    "PredictionRow",
    "read_prediction_rows",
    "build_dataset",
    "ingest",
    "write_prediction_file",
    "write_curve_csv",
]

FORMATS = ("csv", "jsonl")


@dataclass(frozen=True)
class PredictionRow:
    """One parsed file row: numeric score, label text, optional weight."""

    score: float
    label: str
    weight: float | None


def _check_format(format: str) -> str:
    if format not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {format!r}")
    return format


def _open_text(path):
    try:
        return open(path, "r", encoding="utf-8", newline="")
    except OSError as exc:
        raise PredictionFileError(f"cannot open: {exc.strerror or exc}", path=str(path)) from None


def _parse_float(text: str, column: str, path: str, row: int) -> float:
    try:
        return float(text)
    except (TypeError, ValueError):
        raise ParseError(f"cannot parse {column} value {text!r}", path=path, row=row) from None


def _check_score(value: float, path: str, row: int) -> float:
    if not math.isfinite(value):
        raise NonFiniteValueError(f"score must be finite, got {value!r}", path=path, row=row)
    return value


def _check_weight(value: float, path: str, row: int) -> float:
    if not math.isfinite(value):
        raise NonFiniteValueError(f"weight must be finite, got {value!r}", path=path, row=row)
    if value <= 0.0:
        raise NonPositiveWeightError(f"weight must be > 0, got {value!r}", path=path, row=row)
    return value


def _label_text(value, path: str, row: int) -> str:
    if isinstance(value, str):
        text = value.strip()
    elif isinstance(value, bool) or value is None:
        raise ParseError(f"label must be text or a number, got {value!r}", path=path, row=row)
    elif isinstance(value, int):
        text = str(value)
    elif isinstance(value, float):
        text = repr(value)
    else:
        raise ParseError(f"label must be text or a number, got {value!r}", path=path, row=row)
    if not text:
        raise ParseError("label is empty", path=path, row=row)
    return text


def _read_csv_rows(path) -> list[PredictionRow]:
    rows: list[PredictionRow] = []
    with _open_text(path) as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("file is empty (missing header)", path=str(path)) from None
        names = [cell.strip().lower().lstrip("﻿") for cell in header]
        try:
            score_col = names.index("score")
            label_col = names.index("label")
        except ValueError:
            raise ParseError(
                f"header must contain 'score' and 'label' columns, got {header!r}", path=str(path)
            ) from None
        weight_col = names.index("weight") if "weight" in names else None

        for ordinal, cells in enumerate(reader, start=1):
            if not cells or all(not cell.strip() for cell in cells):
                continue
            if len(cells) < len(names):
                raise ParseError(
                    f"expected {len(names)} cells, got {len(cells)}", path=str(path), row=ordinal
                )
            score = _check_score(
                _parse_float(cells[score_col].strip(), "score", str(path), ordinal),
                str(path),
                ordinal,
            )
            label = _label_text(cells[label_col], str(path), ordinal)
            weight = None
            if weight_col is not None:
                cell = cells[weight_col].strip()
                if cell:
                    weight = _check_weight(
                        _parse_float(cell, "weight", str(path), ordinal), str(path), ordinal
                    )
            rows.append(PredictionRow(score=score, label=label, weight=weight))
    return rows


def _read_jsonl_rows(path) -> list[PredictionRow]:
    rows: list[PredictionRow] = []
    ordinal = 0
    with _open_text(path) as handle:
        for line in handle:
            if not line.strip():
                continue
            ordinal += 1
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc.msg}", path=str(path), row=ordinal) from None
            if not isinstance(obj, dict):
                raise ParseError("each line must be a JSON object", path=str(path), row=ordinal)
            if "score" not in obj or "label" not in obj:
                raise ParseError("object needs 'score' and 'label' keys", path=str(path), row=ordinal)
            raw_score = obj["score"]
            if isinstance(raw_score, bool) or not isinstance(raw_score, (int, float)):
                raise ParseError(
                    f"score must be a number, got {raw_score!r}", path=str(path), row=ordinal
                )
            score = _check_score(float(raw_score), str(path), ordinal)
            label = _label_text(obj["label"], str(path), ordinal)
            weight = None
            if "weight" in obj and obj["weight"] is not None:
                raw_weight = obj["weight"]
                if isinstance(raw_weight, bool) or not isinstance(raw_weight, (int, float)):
                    raise ParseError(
                        f"weight must be a number, got {raw_weight!r}", path=str(path), row=ordinal
                    )
                weight = _check_weight(float(raw_weight), str(path), ordinal)
            rows.append(PredictionRow(score=score, label=label, weight=weight))
    return rows


def read_prediction_rows(path, format: str = "csv") -> list[PredictionRow]:
    """Parse a prediction file into rows, validating cells but not labels."""
    _check_format(format)
    return _read_csv_rows(path) if format == "csv" else _read_jsonl_rows(path)


def build_dataset(
    rows: list[PredictionRow],
    positive_label: str,
    s_star: float = 0.0,
    *,
    path: str | None = None,
) -> tuple[Dataset, DecisionSpec, str | None]:
    """Turn parsed rows into a dataset; returns the negative label text too.

    At most two distinct label values may appear, and if two do, one must be
    ``positive_label``.  A file whose only label differs from
    ``positive_label`` is a legal all-negative dataset (AUROC is undefined
    there, not an error).
    """
    if not rows:
        raise ParseError("file contains no data rows", path=path)
    seen: dict[str, int] = {}
    for ordinal, row in enumerate(rows, start=1):
        if row.label not in seen:
            seen[row.label] = ordinal
    if len(seen) > 2:
        extra = sorted(seen, key=seen.get)[2]
        raise UnknownLabelError(
            f"more than two distinct labels; third value {extra!r}", path=path, row=seen[extra]
        )
    if len(seen) == 2 and positive_label not in seen:
        raise UnknownLabelError(
            f"positive label {positive_label!r} not among file labels {sorted(seen)!r}",
            path=path,
        )
    negative = next((name for name in seen if name != positive_label), None)
    dataset = Dataset(
        [row.score for row in rows],
        [1 if row.label == positive_label else 0 for row in rows],
        [1.0 if row.weight is None else row.weight for row in rows],
    )
    return dataset, make_abs_spec(s_star), negative


def ingest(
    path,
    format: str = "csv",
    positive_label: str = "1",
    s_star: float = 0.0,
) -> tuple[Dataset, DecisionSpec]:
    """Read a prediction file into a dataset plus its threshold spec."""
    rows = read_prediction_rows(path, format)
    dataset, spec, _ = build_dataset(rows, positive_label, s_star, path=str(path))
    return dataset, spec


def _float_text(value: float) -> str:
    # repr of a Python float is the shortest string that round-trips exactly
    return repr(float(value))


def write_prediction_file(
    path,
    dataset: Dataset,
    format: str = "csv",
    positive_label: str = "1",
    negative_label: str = "0",
) -> None:
    """Serialize a dataset so that ingesting it back is lossless."""
    _check_format(format)
    if positive_label == negative_label:
        raise ValueError("positive and negative label names must differ")
    names = (negative_label, positive_label)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        if format == "csv":
            writer = csv.writer(handle)
            writer.writerow(["score", "label", "weight"])
            for s, y, w in zip(dataset.scores, dataset.labels, dataset.weights):
                writer.writerow([_float_text(s), names[int(y)], _float_text(w)])
        else:
            for s, y, w in zip(dataset.scores, dataset.labels, dataset.weights):
                record = {"score": float(s), "label": names[int(y)], "weight": float(w)}
                handle.write(json.dumps(record) + "\n")


def write_curve_csv(path, curve: Curve) -> None:
    """Write a curve's exact breakpoints as x,y rows (no resampling)."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["x", "y"])
        for x, y in zip(curve.x, curve.y):
            writer.writerow([_float_text(x), _float_text(y)])

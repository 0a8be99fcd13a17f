"""Gene-expression dataset handling.

Covers the tabular interchange format (samples x genes, TPM-scale values),
label vocabularies, [0,1] min-max scaling fitted on training data only,
and the per-class stratified train/test split.

File format: UTF-8 CSV or TSV. First header cell is ``sample_id``, the
remaining header cells are gene ids, and an optional column (``label`` by
convention, last position) carries the class label. All expression cells
must parse as finite, non-negative reals.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import (
    ClassTooSmall,
    DataError,
    DimensionMismatch,
    DuplicateId,
    EmptyDataset,
    MissingFile,
    MissingLabels,
    ParseError,
    UnknownLabel,
)

# 32 GDC cancer codes; "normal" prepended gives the canonical 33-class vocabulary.
GDC_CANCER_CODES = (
    "KICH", "LIHC", "DLBC", "OV", "USC", "LGG", "THCA", "ACC",
    "LUAD", "HNSC", "BLCA", "MESO", "ESCA", "UVM", "CESC", "LUSC",
    "TGCT", "PAAD", "SARC", "KIRP", "UCEX", "STAD", "PCPG", "KIRC",
    "SKCM", "THYM", "PRAD", "READ", "GBM", "BRCA", "CHOL", "COAD",
)

NORMAL_CLASS = "normal"

SCALER_FORMAT_VERSION = 1


@dataclass(frozen=True)
class ExpressionDataset:
    """Immutable samples x genes matrix with ids and optional labels."""

    sample_ids: tuple[str, ...]
    gene_ids: tuple[str, ...]
    values: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2:
            raise DimensionMismatch(f"values must be 2-D, got ndim={values.ndim}")
        if values.shape[0] != len(self.sample_ids):
            raise DimensionMismatch(
                f"{values.shape[0]} rows but {len(self.sample_ids)} sample ids"
            )
        if values.shape[1] != len(self.gene_ids):
            raise DimensionMismatch(
                f"{values.shape[1]} columns but {len(self.gene_ids)} gene ids"
            )
        if self.labels is not None and len(self.labels) != len(self.sample_ids):
            raise DimensionMismatch(
                f"{len(self.labels)} labels but {len(self.sample_ids)} samples"
            )
        if len(set(self.sample_ids)) != len(self.sample_ids):
            raise DuplicateId("duplicate sample ids")
        if len(set(self.gene_ids)) != len(self.gene_ids):
            raise DuplicateId("duplicate gene ids")
        if not np.all(np.isfinite(values)):
            raise DataError("values contain NaN or infinity")
        if np.any(values < 0):
            raise DataError("values contain negatives")
        values = values.copy()
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "sample_ids", tuple(self.sample_ids))
        object.__setattr__(self, "gene_ids", tuple(self.gene_ids))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def n_samples(self) -> int:
        return self.values.shape[0]

    @property
    def n_genes(self) -> int:
        return self.values.shape[1]

    def subset(self, indices: Sequence[int]) -> "ExpressionDataset":
        """New dataset containing the given rows, in the given order."""
        idx = list(indices)
        return ExpressionDataset(
            sample_ids=tuple(self.sample_ids[i] for i in idx),
            gene_ids=self.gene_ids,
            values=self.values[idx],
            labels=None if self.labels is None else tuple(self.labels[i] for i in idx),
        )

    def with_values(self, values: np.ndarray) -> "ExpressionDataset":
        return replace(self, values=values)

    def without_labels(self) -> "ExpressionDataset":
        return replace(self, labels=None)


@dataclass(frozen=True)
class LabelVocabulary:
    """Ordered class names; index in ``classes`` is the class id.

    For binary tasks ``negative_class`` (default "normal") maps to 0 and
    every other class to 1.
    """

    classes: tuple[str, ...]
    negative_class: str = NORMAL_CLASS

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))
        if len(set(self.classes)) != len(self.classes):
            raise DataError("vocabulary class names must be unique")
        if not self.classes:
            raise DataError("vocabulary must not be empty")

    def __len__(self) -> int:
        return len(self.classes)

    def index(self, name: str) -> int:
        try:
            return self.classes.index(name)
        except ValueError:
            raise UnknownLabel(f"label {name!r} not in vocabulary") from None


def gdc_label_vocabulary() -> LabelVocabulary:
    """The 33-class vocabulary: "normal" at id 0, then the 32 GDC cancer codes."""
    return LabelVocabulary(classes=(NORMAL_CLASS,) + GDC_CANCER_CODES)


def vocabulary_from_labels(
    labels: Sequence[str], negative_class: str = NORMAL_CLASS
) -> LabelVocabulary:
    """Vocabulary over the distinct labels, negative class first when present,
    remaining classes sorted."""
    names = sorted(set(labels))
    if negative_class in names:
        names.remove(negative_class)
        names.insert(0, negative_class)
    return LabelVocabulary(classes=tuple(names), negative_class=negative_class)


def encode_labels(
    data: ExpressionDataset, vocab: LabelVocabulary, mode: str
) -> np.ndarray:
    """Integer label vector for the dataset.

    ``mode="binary"``: negative class -> 0, everything else -> 1.
    ``mode="multiclass"``: vocabulary index.
    """
    if data.labels is None:
        raise MissingLabels("dataset has no labels")
    if mode not in ("binary", "multiclass"):
        raise ValueError(f"mode must be 'binary' or 'multiclass', got {mode!r}")
    ids = np.array([vocab.index(name) for name in data.labels], dtype=np.int64)
    if mode == "binary":
        negative = vocab.index(vocab.negative_class)
        return (ids != negative).astype(np.int64)
    return ids


# ---------------------------------------------------------------------------
# min-max scaling

@dataclass(frozen=True)
class MinMaxScaler:
    """Per-feature min/max from the training rows; optional log2(x+1) first."""

    mins: np.ndarray
    maxs: np.ndarray
    log2: bool = False

    def __post_init__(self):
        mins = np.asarray(self.mins, dtype=np.float64)
        maxs = np.asarray(self.maxs, dtype=np.float64)
        if mins.shape != maxs.shape or mins.ndim != 1:
            raise DimensionMismatch("mins and maxs must be 1-D vectors of equal length")
        if np.any(maxs < mins):
            raise DataError("max < min in scaler")
        object.__setattr__(self, "mins", mins)
        object.__setattr__(self, "maxs", maxs)

    def __len__(self) -> int:
        return len(self.mins)


def fit_minmax(train: ExpressionDataset, log2: bool = False) -> MinMaxScaler:
    """Per-feature min/max over the training rows only."""
    if train.n_samples == 0:
        raise EmptyDataset("cannot fit a scaler on an empty dataset")
    x = train.values
    if log2:
        x = np.log2(x + 1.0)
    return MinMaxScaler(mins=x.min(axis=0), maxs=x.max(axis=0), log2=log2)


def apply_minmax(scaler: MinMaxScaler, data: ExpressionDataset) -> ExpressionDataset:
    """Map each value to (x - min) / (max - min), clamped to [0, 1].

    Constant features (max == min) map to 0 so the feature count stays fixed.
    """
    if data.n_genes != len(scaler):
        raise DimensionMismatch(
            f"dataset has {data.n_genes} features, scaler has {len(scaler)}"
        )
    x = data.values
    if scaler.log2:
        x = np.log2(x + 1.0)
    span = scaler.maxs - scaler.mins
    safe_span = np.where(span > 0, span, 1.0)
    scaled = (x - scaler.mins) / safe_span
    scaled = np.where(span > 0, scaled, 0.0)
    scaled = np.clip(scaled, 0.0, 1.0)
    return data.with_values(scaled)


def save_scaler(scaler: MinMaxScaler, path: str | Path) -> None:
    doc = {
        "version": SCALER_FORMAT_VERSION,
        "mins": scaler.mins.tolist(),
        "maxs": scaler.maxs.tolist(),
        "log2": scaler.log2,
    }
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def load_scaler(path: str | Path) -> MinMaxScaler:
    path = Path(path)
    if not path.exists():
        raise MissingFile(str(path))
    doc = json.loads(path.read_text())
    if doc.get("version") != SCALER_FORMAT_VERSION:
        raise DataError(f"unsupported scaler version {doc.get('version')!r}")
    return MinMaxScaler(
        mins=np.array(doc["mins"], dtype=np.float64),
        maxs=np.array(doc["maxs"], dtype=np.float64),
        log2=bool(doc.get("log2", False)),
    )


# ---------------------------------------------------------------------------
# matrix file I/O

def _delimiter(fmt: str) -> str:
    if fmt == "csv":
        return ","
    if fmt == "tsv":
        return "\t"
    raise ValueError(f"format must be 'csv' or 'tsv', got {fmt!r}")


def _infer_format(path: Path) -> str:
    return "tsv" if path.suffix.lower() in (".tsv", ".txt") else "csv"


def load_matrix(
    path: str | Path,
    format: str | None = None,
    label_column: str | None = None,
    vocab: LabelVocabulary | None = None,
) -> ExpressionDataset:
    """Load a samples x genes matrix file.

    ``label_column`` names the header column to read class labels from;
    when omitted, every non-id column must be numeric and the dataset is
    returned unlabeled. When ``vocab`` is given, labels are checked
    against it.
    """
    path = Path(path)
    if not path.exists():
        raise MissingFile(str(path))
    fmt = format or _infer_format(path)
    delim = _delimiter(fmt)

    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle, delimiter=delim)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty file, header row required", row=1) from None
        if not header or header[0] != "sample_id":
            raise ParseError("first header cell must be 'sample_id'", row=1, col=1)

        label_idx = None
        if label_column is not None:
            try:
                label_idx = header.index(label_column)
            except ValueError:
                raise ParseError(
                    f"label column {label_column!r} not in header", row=1
                ) from None
            if label_idx == 0:
                raise ParseError("label column cannot be the sample_id column", row=1)

        gene_ids = tuple(
            name for i, name in enumerate(header) if i != 0 and i != label_idx
        )
        gene_cols = [i for i in range(len(header)) if i != 0 and i != label_idx]

        sample_ids: list[str] = []
        labels: list[str] = []
        rows: list[list[float]] = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise ParseError(
                    f"expected {len(header)} cells, found {len(row)}", row=lineno
                )
            sample_ids.append(row[0])
            if label_idx is not None:
                labels.append(row[label_idx])
            parsed = []
            for col in gene_cols:
                cell = row[col]
                try:
                    value = float(cell)
                except ValueError:
                    raise ParseError(
                        f"non-numeric cell {cell!r}", row=lineno, col=col + 1
                    ) from None
                if not np.isfinite(value):
                    raise ParseError(
                        f"non-finite cell {cell!r}", row=lineno, col=col + 1
                    )
                if value < 0:
                    raise ParseError(
                        f"negative cell {cell!r}", row=lineno, col=col + 1
                    )
                parsed.append(value)
            rows.append(parsed)

    if vocab is not None and label_idx is not None:
        for name in labels:
            vocab.index(name)  # raises UnknownLabel

    values = (
        np.array(rows, dtype=np.float64)
        if rows
        else np.empty((0, len(gene_ids)), dtype=np.float64)
    )
    return ExpressionDataset(
        sample_ids=tuple(sample_ids),
        gene_ids=gene_ids,
        values=values,
        labels=tuple(labels) if label_idx is not None else None,
    )


def write_matrix(
    data: ExpressionDataset, path: str | Path, format: str | None = None
) -> None:
    """Write the dataset in the interchange format; labels go in a final
    ``label`` column when present. Floats use shortest round-trip form."""
    path = Path(path)
    fmt = format or _infer_format(path)
    delim = _delimiter(fmt)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, delimiter=delim, lineterminator="\n")
        header = ["sample_id", *data.gene_ids]
        if data.labels is not None:
            header.append("label")
        writer.writerow(header)
        for i, sid in enumerate(data.sample_ids):
            row = [sid, *(repr(float(v)) for v in data.values[i])]
            if data.labels is not None:
                row.append(data.labels[i])
            writer.writerow(row)


# ---------------------------------------------------------------------------
# splitting

def stratified_split(
    data: ExpressionDataset, train_fraction: float, seed: int
) -> tuple[ExpressionDataset, ExpressionDataset]:
    """Per-class shuffled split.

    Each class is shuffled independently with the seed; the class
    contributes round(fraction * count) samples to train, clamped so both
    partitions keep at least one sample of the class.
    """
    if data.labels is None:
        raise MissingLabels("stratified split requires labels")
    if not 0.0 < train_fraction < 1.0:
        raise ValueError(f"train_fraction must be in (0, 1), got {train_fraction}")

    by_class: dict[str, list[int]] = {}
    for i, name in enumerate(data.labels):
        by_class.setdefault(name, []).append(i)
    for name, idx in by_class.items():
        if len(idx) < 2:
            raise ClassTooSmall(f"class {name!r} has {len(idx)} sample(s), need >= 2")

    rng = np.random.default_rng(seed)
    train_idx: list[int] = []
    test_idx: list[int] = []
    for name in sorted(by_class):
        idx = np.array(by_class[name])
        perm = rng.permutation(len(idx))
        n_train = int(round(train_fraction * len(idx)))
        n_train = min(max(n_train, 1), len(idx) - 1)
        shuffled = idx[perm]
        train_idx.extend(shuffled[:n_train].tolist())
        test_idx.extend(shuffled[n_train:].tolist())

    return data.subset(sorted(train_idx)), data.subset(sorted(test_idx))

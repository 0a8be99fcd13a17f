"""Confusion matrices, detection metrics, and per-class recall reports.

Cancer is the positive class throughout: a false negative is a missed
cancer. Rates with a zero denominator are reported as not-applicable
(``None`` here, ``null`` in JSON, ``NA`` in tables).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import BadShape, DataError, LabelOutOfRange, MissingFile

DEFAULT_RECALL_THRESHOLD = 0.90


def confusion_matrix(y_true, y_pred, n_classes: int) -> np.ndarray:
    """C[i][j] counts samples of true class i predicted as class j."""
    y_true = np.asarray(y_true, dtype=np.int64)
    y_pred = np.asarray(y_pred, dtype=np.int64)
    if y_true.shape != y_pred.shape or y_true.ndim != 1:
        raise BadShape("y_true and y_pred must be equal-length vectors")
    if n_classes < 1:
        raise BadShape(f"n_classes must be >= 1, got {n_classes}")
    for name, vec in (("y_true", y_true), ("y_pred", y_pred)):
        if vec.size and (vec.min() < 0 or vec.max() >= n_classes):
            raise LabelOutOfRange(f"{name} contains ids outside [0, {n_classes})")
    c = np.zeros((n_classes, n_classes), dtype=np.int64)
    for t, p in zip(y_true, y_pred):
        c[t, p] += 1
    return c


def normalize_rows(c: np.ndarray) -> np.ndarray:
    """Row-wise fractions; rows of an absent class stay all-zero."""
    c = np.asarray(c, dtype=np.float64)
    sums = c.sum(axis=1, keepdims=True)
    return np.divide(c, sums, out=np.zeros_like(c), where=sums > 0)


def binary_metrics(
    c: np.ndarray, positive_class: int = 1
) -> dict[str, float | None]:
    """accuracy, FPR = FP/(FP+TN), FNR = FN/(FN+TP) from a 2x2 matrix."""
    c = np.asarray(c)
    if c.shape != (2, 2):
        raise BadShape(f"expected a 2x2 matrix, got {c.shape}")
    if positive_class not in (0, 1):
        raise LabelOutOfRange("positive_class must be 0 or 1")
    pos = positive_class
    neg = 1 - pos
    tp, fn = int(c[pos, pos]), int(c[pos, neg])
    tn, fp = int(c[neg, neg]), int(c[neg, pos])
    total = tp + fn + tn + fp
    return {
        "accuracy": (tp + tn) / total if total else None,
        "fpr": fp / (fp + tn) if (fp + tn) else None,
        "fnr": fn / (fn + tp) if (fn + tp) else None,
    }


def per_class_report(
    c: np.ndarray, threshold: float = DEFAULT_RECALL_THRESHOLD
) -> tuple[list[float | None], int]:
    """Per-class recall (diagonal over row sum, None for empty rows) and
    the number of classes with recall strictly above the threshold."""
    c = np.asarray(c)
    if c.ndim != 2 or c.shape[0] != c.shape[1]:
        raise BadShape(f"confusion matrix must be square, got {c.shape}")
    recalls: list[float | None] = []
    for i in range(c.shape[0]):
        row_sum = int(c[i].sum())
        recalls.append(int(c[i, i]) / row_sum if row_sum else None)
    above = sum(1 for r in recalls if r is not None and r > threshold)
    return recalls, above


@dataclass(frozen=True)
class EvalReport:
    vocab: tuple[str, ...]
    confusion: np.ndarray
    normalized: np.ndarray
    accuracy: float | None
    fpr: float | None
    fnr: float | None
    per_class_recall: tuple[float | None, ...]
    above_threshold_count: int
    recall_threshold: float = DEFAULT_RECALL_THRESHOLD


def build_report(
    y_true,
    y_pred,
    vocab: tuple[str, ...] | list[str],
    threshold: float = DEFAULT_RECALL_THRESHOLD,
) -> EvalReport:
    """Full evaluation against the class names in ``vocab``; binary rates
    are filled in iff there are exactly two classes (positive id 1)."""
    vocab = tuple(vocab)
    c = confusion_matrix(y_true, y_pred, n_classes=len(vocab))
    total = int(c.sum())
    accuracy = float(np.trace(c)) / total if total else None
    fpr = fnr = None
    if len(vocab) == 2:
        rates = binary_metrics(c, positive_class=1)
        fpr, fnr = rates["fpr"], rates["fnr"]
    recalls, above = per_class_report(c, threshold=threshold)
    return EvalReport(
        vocab=vocab,
        confusion=c,
        normalized=normalize_rows(c),
        accuracy=accuracy,
        fpr=fpr,
        fnr=fnr,
        per_class_recall=tuple(recalls),
        above_threshold_count=above,
        recall_threshold=threshold,
    )


REPORT_KEYS = (
    "vocab",
    "confusion",
    "normalized",
    "accuracy",
    "fpr",
    "fnr",
    "per_class_recall",
    "above_threshold_count",
)


def report_to_dict(report: EvalReport) -> dict:
    """Fixed-key JSON form; stores outcomes, not the threshold knob."""
    return {
        "vocab": list(report.vocab),
        "confusion": report.confusion.tolist(),
        "normalized": report.normalized.tolist(),
        "accuracy": report.accuracy,
        "fpr": report.fpr,
        "fnr": report.fnr,
        "per_class_recall": list(report.per_class_recall),
        "above_threshold_count": report.above_threshold_count,
    }


def report_from_dict(doc: dict) -> EvalReport:
    missing = set(REPORT_KEYS) - set(doc)
    if missing:
        raise DataError(f"report is missing keys: {sorted(missing)}")
    return EvalReport(
        vocab=tuple(doc["vocab"]),
        confusion=np.array(doc["confusion"], dtype=np.int64),
        normalized=np.array(doc["normalized"], dtype=np.float64),
        accuracy=doc["accuracy"],
        fpr=doc["fpr"],
        fnr=doc["fnr"],
        per_class_recall=tuple(doc["per_class_recall"]),
        above_threshold_count=int(doc["above_threshold_count"]),
    )


def save_report(report: EvalReport, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n"
    )


def load_report(path: str | Path) -> EvalReport:
    path = Path(path)
    if not path.exists():
        raise MissingFile(str(path))
    return report_from_dict(json.loads(path.read_text()))


def _fmt_rate(value: float | None) -> str:
    return "NA" if value is None else f"{100.0 * value:.2f}%"


def render_report_text(report: EvalReport) -> str:
    """Aligned text view: headline metrics, then one recall row per class."""
    lines = [
        f"samples:  {int(report.confusion.sum())}",
        f"accuracy: {_fmt_rate(report.accuracy)}",
    ]
    if len(report.vocab) == 2:
        lines.append(f"FPR:      {_fmt_rate(report.fpr)}")
        lines.append(f"FNR:      {_fmt_rate(report.fnr)}")
    lines.append(
        f"classes with recall > {report.recall_threshold:.0%}: "
        f"{report.above_threshold_count} of {len(report.vocab)}"
    )
    width = max(len(name) for name in report.vocab)
    lines.append("")
    lines.append(f"{'class'.ljust(width)}  count  recall")
    for name, row, recall in zip(
        report.vocab, report.confusion, report.per_class_recall
    ):
        lines.append(
            f"{name.ljust(width)}  {int(row.sum()):5d}  {_fmt_rate(recall)}"
        )
    return "\n".join(lines) + "\n"


def plot_report_heatmap(report: EvalReport, path: str | Path) -> None:
    """Heatmap of the row-normalized confusion matrix."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    n = len(report.vocab)
    fig, ax = plt.subplots(figsize=(max(4.0, 0.35 * n + 2), max(3.5, 0.35 * n + 1.5)))
    image = ax.imshow(report.normalized, cmap="Blues", vmin=0.0, vmax=1.0)
    ax.set_xlabel("predicted")
    ax.set_ylabel("true")
    ax.set_xticks(range(n), report.vocab, rotation=90, fontsize=7)
    ax.set_yticks(range(n), report.vocab, fontsize=7)
    fig.colorbar(image, ax=ax, fraction=0.046)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)

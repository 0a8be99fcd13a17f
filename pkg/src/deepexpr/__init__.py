"""Autoencoder feature learning and transfer classification for
gene-expression matrices, with PCA-based reference classifiers."""

from .autoencoder import (
    AutoencoderSpec,
    build_autoencoder,
    encode,
    extract_encoder,
    load_autoencoder,
    save_autoencoder,
    train_autoencoder,
)
from .data import (
    ExpressionDataset,
    LabelVocabulary,
    MinMaxScaler,
    apply_minmax,
    encode_labels,
    fit_minmax,
    gdc_label_vocabulary,
    load_matrix,
    load_scaler,
    save_scaler,
    stratified_split,
    vocabulary_from_labels,
    write_matrix,
)
from .errors import DataError, NumericalError
from .evaluate import (
    EvalReport,
    binary_metrics,
    build_report,
    confusion_matrix,
    load_report,
    per_class_report,
    render_report_text,
    save_report,
)
from .seeding import derive_seed
from .synth import SynthSpec, generate
from .transfer import (
    ClassifierSpec,
    build_transfer_classifier,
    load_classifier,
    predict,
    predict_ids,
    save_classifier,
    train_classifier,
)

__version__ = "0.1.0"

__all__ = [
    "AutoencoderSpec",
    "ClassifierSpec",
    "DataError",
    "EvalReport",
    "ExpressionDataset",
    "LabelVocabulary",
    "MinMaxScaler",
    "NumericalError",
    "SynthSpec",
    "apply_minmax",
    "binary_metrics",
    "build_autoencoder",
    "build_report",
    "build_transfer_classifier",
    "confusion_matrix",
    "derive_seed",
    "encode",
    "encode_labels",
    "extract_encoder",
    "fit_minmax",
    "gdc_label_vocabulary",
    "generate",
    "load_autoencoder",
    "load_classifier",
    "load_matrix",
    "load_report",
    "load_scaler",
    "per_class_report",
    "predict",
    "predict_ids",
    "render_report_text",
    "save_autoencoder",
    "save_classifier",
    "save_report",
    "save_scaler",
    "stratified_split",
    "train_autoencoder",
    "train_classifier",
    "vocabulary_from_labels",
    "write_matrix",
]

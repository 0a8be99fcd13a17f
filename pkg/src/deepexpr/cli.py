"""Command line entry point.

Subcommands cover the full workflow: generate synthetic data, split it,
train the autoencoder, train the transfer classifier, predict, evaluate,
run the PCA baseline suite, and plot a report heatmap.

Options may come from a JSON config file (``--config``); flags given on
the command line override config values. Exit codes: 2 for usage errors,
3 for data problems, 4 for numerical failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .autoencoder import (
    AutoencoderSpec,
    build_autoencoder,
    extract_encoder,
    save_autoencoder,
    train_autoencoder,
)
from .baselines import (
    render_suite_csv,
    render_suite_table,
    run_baseline_suite,
)
from .data import (
    LabelVocabulary,
    apply_minmax,
    fit_minmax,
    gdc_label_vocabulary,
    load_matrix,
    load_scaler,
    save_scaler,
    stratified_split,
    vocabulary_from_labels,
    write_matrix,
)
from .errors import DataError, MissingLabels, NumericalError
from .evaluate import (
    build_report,
    load_report,
    plot_report_heatmap,
    render_report_text,
    save_report,
)
from .nn import TrainConfig, load_network, save_network
from .seeding import derive_seed
from .synth import SynthSpec, generate
from .transfer import (
    ClassifierSpec,
    build_transfer_classifier,
    load_classifier,
    predict,
    save_classifier,
    train_classifier,
)

POSITIVE_NAME = "cancer"

# seed streams, one per randomized stage
_S_AE_INIT = 1
_S_AE_TRAIN = 2
_S_CLF_INIT = 3
_S_CLF_TRAIN = 4


def _ints(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok != ""]


def _resolve(args: argparse.Namespace, defaults: dict) -> argparse.Namespace:
    """Fill unset options from the config file, then from defaults."""
    config = {}
    if getattr(args, "config", None):
        path = Path(args.config)
        if not path.exists():
            raise DataError(f"config file not found: {path}")
        try:
            config = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise DataError(f"config file is not valid JSON: {exc}") from None
        unknown = set(config) - set(defaults)
        if unknown:
            raise DataError(f"unknown config keys: {sorted(unknown)}")
    for key, fallback in defaults.items():
        if getattr(args, key, None) is None:
            setattr(args, key, config.get(key, fallback))
    return args


def _load_input(path, fmt, label_column):
    """``label_column="auto"`` uses a ``label`` column iff the header has one."""
    if label_column == "auto":
        header = Path(path).read_text().split("\n", 1)[0] if Path(path).exists() else ""
        delim = "\t" if "\t" in header else ","
        label_column = "label" if "label" in header.split(delim) else None
    elif label_column in ("", "none"):
        label_column = None
    return load_matrix(path, format=fmt, label_column=label_column)


def _vocab_for(labels, kind: str) -> LabelVocabulary:
    if kind == "gdc":
        return gdc_label_vocabulary()
    return vocabulary_from_labels(labels)


def _write_history(history, path) -> None:
    with_val = history.val_loss is not None
    lines = ["epoch,train_loss" + (",val_loss" if with_val else "")]
    for i, value in enumerate(history.train_loss):
        row = f"{i + 1},{value!r}"
        if with_val:
            row += f",{history.val_loss[i]!r}"
        lines.append(row)
    Path(path).write_text("\n".join(lines) + "\n")


def _train_config(args, n_samples: int, seed: int) -> TrainConfig:
    return TrainConfig(
        epochs=args.epochs,
        batch_size=min(args.batch_size, n_samples),
        learning_rate=args.lr,
        optimizer=args.optimizer,
        seed=seed,
    )


# ---------------------------------------------------------------------------
# subcommands

def _cmd_synth(args) -> int:
    _resolve(
        args,
        dict(
            classes=2,
            per_class="500",
            genes=200,
            latent_dim=5,
            noise=0.1,
            strength=1.0,
            sep=2.0,
            output_scale=3.0,
            names=None,
            seed=0,
        ),
    )
    counts = _ints(str(args.per_class))
    if len(counts) == 1:
        counts = counts * args.classes
    names = args.names.split(",") if args.names else None
    spec = SynthSpec(
        n_classes=args.classes,
        samples_per_class=counts,
        n_genes=args.genes,
        latent_dim=args.latent_dim,
        noise=args.noise,
        nonlinearity_strength=args.strength,
        class_sep=args.sep,
        output_scale=args.output_scale,
        class_names=names,
        seed=args.seed,
    )
    data = generate(spec)
    write_matrix(data, args.output, format=args.format)
    print(f"wrote {data.n_samples} samples x {data.n_genes} genes to {args.output}")
    return 0


def _cmd_split(args) -> int:
    _resolve(args, dict(fraction=0.8, seed=0, label_column="label"))
    data = _load_input(args.input, args.format, args.label_column)
    if data.labels is None:
        raise MissingLabels("split requires a labeled matrix")
    train, test = stratified_split(data, args.fraction, seed=args.seed)
    write_matrix(train, args.train_out, format=args.format)
    write_matrix(test, args.test_out, format=args.format)
    print(
        f"split {data.n_samples} samples into {train.n_samples} train / "
        f"{test.n_samples} test"
    )
    return 0


def _cmd_train_ae(args) -> int:
    _resolve(
        args,
        dict(
            encoder_widths="100,50",
            code_dim=25,
            epochs=1000,
            batch_size=32,
            lr=1e-3,
            optimizer="adam",
            seed=0,
            log2=False,
            label_column="auto",
        ),
    )
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    data = _load_input(args.input, args.format, args.label_column)

    scaler = fit_minmax(data, log2=args.log2)
    x = apply_minmax(scaler, data).values
    spec = AutoencoderSpec(
        input_dim=data.n_genes,
        encoder_widths=tuple(_ints(args.encoder_widths)),
        code_dim=args.code_dim,
    )
    net = build_autoencoder(spec, seed=derive_seed(args.seed, _S_AE_INIT))
    config = _train_config(args, data.n_samples, derive_seed(args.seed, _S_AE_TRAIN))
    history = train_autoencoder(net, x, config)

    save_scaler(scaler, out / "scaler.json")
    save_autoencoder(net, spec, out / "autoencoder.json")
    save_network(extract_encoder(net, spec), out / "encoder.json")
    _write_history(history, out / "history.csv")
    print(
        f"trained autoencoder {spec.layer_sizes()} for {len(history)} epochs, "
        f"final loss {history.train_loss[-1]:.4f}"
    )
    return 0


def _cmd_train_clf(args) -> int:
    _resolve(
        args,
        dict(
            task="detect",
            vocab="auto",
            head_widths="64",
            epochs=200,
            batch_size=32,
            lr=1e-3,
            optimizer="adam",
            seed=0,
            patience=20,
            validation_fraction=0.1,
            label_column="label",
        ),
    )
    out = Path(args.output)
    data = _load_input(args.input, args.format, args.label_column)
    if data.labels is None:
        raise MissingLabels("classifier training requires a labeled matrix")

    scaler = load_scaler(out / "scaler.json")
    encoder = load_network(out / "encoder.json")
    x = apply_minmax(scaler, data).values

    vocab = _vocab_for(data.labels, args.vocab)
    if args.task == "detect":
        y = np.array(
            [0 if name == vocab.negative_class else 1 for name in data.labels],
            dtype=np.int64,
        )
        n_classes = 2
        out_vocab = LabelVocabulary(
            classes=(vocab.negative_class, POSITIVE_NAME),
            negative_class=vocab.negative_class,
        )
    else:
        y = np.array([vocab.index(name) for name in data.labels], dtype=np.int64)
        n_classes = len(vocab)
        out_vocab = vocab

    spec = ClassifierSpec(
        n_classes=n_classes, head_hidden_widths=tuple(_ints(args.head_widths))
    )
    net = build_transfer_classifier(
        encoder, spec, seed=derive_seed(args.seed, _S_CLF_INIT)
    )
    config = _train_config(args, data.n_samples, derive_seed(args.seed, _S_CLF_TRAIN))
    history = train_classifier(
        net,
        x,
        y,
        config,
        validation_fraction=args.validation_fraction,
        patience=args.patience,
    )

    save_classifier(net, out_vocab, args.task, out / "classifier.json")
    _write_history(history, out / "clf_history.csv")
    print(
        f"trained {args.task} classifier for {len(history)} epochs, "
        f"final loss {history.train_loss[-1]:.4f}"
    )
    return 0


def _predictions(model_dir: Path, data):
    scaler = load_scaler(model_dir / "scaler.json")
    net, vocab, task = load_classifier(model_dir / "classifier.json")
    x = apply_minmax(scaler, data).values
    ids, probs = predict(net, x)
    return ids, probs, vocab, task


def _cmd_predict(args) -> int:
    _resolve(args, dict(label_column="auto"))
    out = Path(args.output)
    data = _load_input(args.input, args.format, args.label_column)
    ids, probs, vocab, _task = _predictions(out, data)
    if probs.shape[1] == 1:
        confidence = np.where(ids == 1, probs[:, 0], 1.0 - probs[:, 0])
    else:
        confidence = probs[np.arange(len(ids)), ids]
    lines = ["sample_id,predicted,probability"]
    for sid, cid, p in zip(data.sample_ids, ids, confidence):
        lines.append(f"{sid},{vocab.classes[cid]},{float(p)!r}")
    path = out / "predictions.csv"
    path.write_text("\n".join(lines) + "\n")
    print(f"wrote {len(ids)} predictions to {path}")
    return 0


def _cmd_eval(args) -> int:
    _resolve(args, dict(label_column="label", threshold=0.90))
    out = Path(args.output)
    data = _load_input(args.input, args.format, args.label_column)
    if data.labels is None:
        raise MissingLabels("evaluation requires a labeled matrix")
    ids, _probs, vocab, task = _predictions(out, data)
    if task == "detect":
        y_true = np.array(
            [0 if name == vocab.negative_class else 1 for name in data.labels],
            dtype=np.int64,
        )
    else:
        y_true = np.array([vocab.index(name) for name in data.labels], dtype=np.int64)
    report = build_report(y_true, ids, vocab.classes, threshold=args.threshold)
    save_report(report, out / "report.json")
    (out / "report.txt").write_text(render_report_text(report))
    print(render_report_text(report), end="")
    return 0


def _cmd_baselines(args) -> int:
    _resolve(
        args,
        dict(
            task="detect",
            vocab="auto",
            pca_k=40,
            knn_k=5,
            trees=100,
            log2=False,
            seed=0,
            label_column="label",
        ),
    )
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    train = _load_input(args.train, args.format, args.label_column)
    test = _load_input(args.test, args.format, args.label_column)
    if train.labels is None or test.labels is None:
        raise MissingLabels("baseline suite requires labeled train and test matrices")
    vocab = _vocab_for(train.labels, args.vocab)
    mode = "binary" if args.task == "detect" else "multiclass"
    results = run_baseline_suite(
        train,
        test,
        task=mode,
        vocab=vocab,
        n_components=args.pca_k,
        knn_k=args.knn_k,
        n_trees=args.trees,
        log2=args.log2,
        seed=args.seed,
    )
    (out / "baselines.csv").write_text(render_suite_csv(results))
    table = render_suite_table(results)
    (out / "baselines.txt").write_text(table)
    print(table, end="")
    return 0


def _cmd_report_plot(args) -> int:
    report = load_report(args.report)
    plot_report_heatmap(report, args.output)
    print(f"wrote heatmap to {args.output}")
    return 0


# ---------------------------------------------------------------------------
# parser

def _add_common(sub, output=True):
    sub.add_argument("--config", help="JSON file with option defaults")
    sub.add_argument("--format", choices=("csv", "tsv"), help="matrix file format")
    if output:
        sub.add_argument("--output", required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deepexpr",
        description="autoencoder features and PCA baselines for expression matrices",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("synth", help="generate a labeled synthetic matrix")
    _add_common(p)
    p.add_argument("--classes", type=int)
    p.add_argument("--per-class", dest="per_class", help="count or comma list")
    p.add_argument("--genes", type=int)
    p.add_argument("--latent-dim", dest="latent_dim", type=int)
    p.add_argument("--noise", type=float)
    p.add_argument("--strength", type=float, help="nonlinearity strength")
    p.add_argument("--sep", type=float, help="class separation")
    p.add_argument(
        "--output-scale", dest="output_scale", type=float, help="dynamic range"
    )
    p.add_argument("--names", help="comma list of class names")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=_cmd_synth)

    p = subs.add_parser("split", help="stratified train/test split")
    _add_common(p, output=False)
    p.add_argument("--input", required=True)
    p.add_argument("--train-out", dest="train_out", required=True)
    p.add_argument("--test-out", dest="test_out", required=True)
    p.add_argument("--fraction", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--label-column", dest="label_column")
    p.set_defaults(func=_cmd_split)

    p = subs.add_parser("train-ae", help="fit scaler and autoencoder, save encoder")
    _add_common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--encoder-widths", dest="encoder_widths", help="comma list")
    p.add_argument("--code-dim", dest="code_dim", type=int)
    p.add_argument("--epochs", type=int)
    p.add_argument("--batch-size", dest="batch_size", type=int)
    p.add_argument("--lr", type=float)
    p.add_argument("--optimizer", choices=("sgd", "adam"))
    p.add_argument("--seed", type=int)
    p.add_argument("--log2", action=argparse.BooleanOptionalAction)
    p.add_argument("--label-column", dest="label_column")
    p.set_defaults(func=_cmd_train_ae)

    p = subs.add_parser("train-clf", help="train a classifier on the frozen encoder")
    _add_common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--task", choices=("detect", "type"))
    p.add_argument("--vocab", choices=("auto", "gdc"))
    p.add_argument("--head-widths", dest="head_widths", help="comma list")
    p.add_argument("--epochs", type=int)
    p.add_argument("--batch-size", dest="batch_size", type=int)
    p.add_argument("--lr", type=float)
    p.add_argument("--optimizer", choices=("sgd", "adam"))
    p.add_argument("--seed", type=int)
    p.add_argument("--patience", type=int)
    p.add_argument(
        "--validation-fraction", dest="validation_fraction", type=float
    )
    p.add_argument("--label-column", dest="label_column")
    p.set_defaults(func=_cmd_train_clf)

    p = subs.add_parser("predict", help="classify a matrix with a saved model")
    _add_common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--label-column", dest="label_column")
    p.set_defaults(func=_cmd_predict)

    p = subs.add_parser("eval", help="score a saved model on a labeled matrix")
    _add_common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--threshold", type=float, help="per-class recall threshold")
    p.add_argument("--label-column", dest="label_column")
    p.set_defaults(func=_cmd_eval)

    p = subs.add_parser("baselines", help="run the five-method PCA suite")
    _add_common(p)
    p.add_argument("--train", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--task", choices=("detect", "type"))
    p.add_argument("--vocab", choices=("auto", "gdc"))
    p.add_argument("--pca-k", dest="pca_k", type=int)
    p.add_argument("--knn-k", dest="knn_k", type=int)
    p.add_argument("--trees", type=int)
    p.add_argument("--log2", action=argparse.BooleanOptionalAction)
    p.add_argument("--seed", type=int)
    p.add_argument("--label-column", dest="label_column")
    p.set_defaults(func=_cmd_baselines)

    p = subs.add_parser("report-plot", help="render a report heatmap PNG")
    p.add_argument("--report", required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_report_plot)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DataError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except NumericalError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: one subcommand per experiment family.

Every run writes a manifest JSON next to its outputs recording the resolved
configuration, seeds, toolkit version, wall-clock duration and produced
files, so any result can be regenerated. Exit codes: 0 success, 1 file/IO
problems, 2 validation problems, 3 numeric divergence.

Flags override values from an optional TOML config file (``--config``),
which holds one table per subcommand. ``--threads`` (or the GDV_THREADS
environment variable) caps the BLAS thread pools.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .dataset import LabeledDataset
from .digits import digit_dataset
from .errors import FormatError, NonFiniteLoss, ValidationError
from .metric import gdv, gdv_curve
from .mds import mds_project
from .synthetic import (
    EnsembleConfig,
    embed_duplicate_y,
    embed_replicate,
    generate_clusters,
    two_cluster_spec,
)
from .transforms import (
    TRANSFORM_KINDS,
    delta_gdv_experiment,
    ensemble_gdv_values,
)
from .nets import (
    MlpConfig,
    dbn_layer_datasets,
    dbn_train_greedy,
    load_model,
    mlp_layer_activations,
    mlp_train,
    prototype_reconstruct,
    save_model,
)
from .nets.checkpoint import model_kind
from .io import (
    load_idx_pair,
    load_labeled_csv,
    read_activation_archive,
    write_curve_csv,
    write_report_json,
    write_svg_lines,
    write_svg_scatter,
)

MANIFEST_SCHEMA = "gdv-manifest/1"
DEFAULT_SEED = 20308


def _apply_thread_cap(threads: int) -> None:
    try:
        import threadpoolctl

        threadpoolctl.threadpool_limits(limits=threads)
    except ImportError:
        pass


def _load_dataset(args) -> LabeledDataset:
    """Resolve --data / --data-images / --data-labels into a dataset."""
    if getattr(args, "data_images", None) or getattr(args, "data_labels", None):
        if not (args.data_images and args.data_labels):
            raise ValidationError("--data-images and --data-labels must be given together")
        return load_idx_pair(args.data_images, args.data_labels)
    data = getattr(args, "data", None)
    if not data:
        raise ValidationError("no input data: pass --data or --data-images/--data-labels")
    if data.startswith("digits:"):
        parts = data.split(":")
        n_per_class = int(parts[1])
        classes = tuple(int(c) for c in parts[2].split(",")) if len(parts) > 2 else tuple(range(10))
        return digit_dataset(n_per_class, classes=classes, seed=args.seed)
    return load_labeled_csv(data)


def _parse_widths(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(w) for w in text.split(","))
    except ValueError:
        raise ValidationError(f"cannot parse widths {text!r}; expected e.g. 784,64,10") from None


class _Run:
    """Collects outputs and writes the manifest, success or not."""

    def __init__(self, args, manifest_path: Path):
        self.args = args
        self.manifest_path = manifest_path
        self.outputs: list[str] = []
        self.start = time.time()

    def add(self, path) -> Path:
        path = Path(path)
        self.outputs.append(str(path))
        return path

    def write_manifest(self, error: BaseException | None) -> None:
        config = {
            k: v for k, v in vars(self.args).items() if k not in ("func", "config")
        }
        doc = {
            "schema": MANIFEST_SCHEMA,
            "subcommand": self.args.subcommand,
            "config": config,
            "seed": getattr(self.args, "seed", None),
            "version": __version__,
            "duration_s": round(time.time() - self.start, 3),
            "outputs": self.outputs,
            "status": "ok" if error is None else "error",
            "error": None if error is None else f"{type(error).__name__}: {error}",
        }
        self.manifest_path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.manifest_path, "w", encoding="utf-8") as f:
            json.dump(doc, f, indent=2, default=str)
            f.write("\n")


def _out_dir_manifest(args) -> Path:
    out = Path(args.out_dir)
    return out / "manifest.json"


def _sibling_manifest(primary) -> Path:
    primary = Path(primary)
    return primary.parent / (primary.name + ".manifest.json")


# --- subcommands -----------------------------------------------------------


def cmd_gdv(args, run: _Run) -> None:
    path = Path(args.input)
    if path.suffix.lower() == ".gdva":
        archive = read_activation_archive(path)
        layers = [
            (layer_id, LabeledDataset(values.astype(np.float64), archive.labels))
            for layer_id, values in archive.layers
        ]
        curve = gdv_curve(layers)
        write_curve_csv(run.add(args.output), curve)
    else:
        report = gdv(load_labeled_csv(path))
        write_report_json(run.add(args.output), report)


def cmd_fig1(args, run: _Run) -> None:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    separated = generate_clusters(two_cluster_spec(0.2, seed=args.seed))
    overlapping = generate_clusters(two_cluster_spec(1.0, seed=args.seed))
    embedded_sep = embed_duplicate_y(separated)
    embedded_ovl = embed_duplicate_y(overlapping)

    values = {
        "separated_2d": gdv(separated).gdv,
        "separated_xyy": gdv(embedded_sep).gdv,
        "overlapping_2d": gdv(overlapping).gdv,
        "overlapping_xyy": gdv(embedded_ovl).gdv,
    }
    with open(run.add(out / "values.json"), "w", encoding="utf-8") as f:
        json.dump({"schema": "gdv-fig1/1", "seed": args.seed, "gdv": values}, f, indent=2)
        f.write("\n")

    sweep = [("2", values["separated_2d"])]
    for dim in range(3, 21):
        sweep.append((str(dim), gdv(embed_replicate(separated, dim)).gdv))
    with open(run.add(out / "embedding_sweep.csv"), "w", encoding="utf-8") as f:
        f.write("target_dim,gdv\n")
        for dim, value in sweep:
            f.write(f"{dim},{value:.17g}\n")
    write_svg_lines(
        run.add(out / "embedding_sweep.svg"),
        [("replicated dims", [v for _, v in sweep])],
        title="GDV under coordinate replication",
    )

    write_svg_scatter(run.add(out / "separated.svg"), separated.points,
                      separated.labels, title=f"separated (gdv={values['separated_2d']:.2f})")
    write_svg_scatter(run.add(out / "overlapping.svg"), overlapping.points,
                      overlapping.labels, title=f"overlapping (gdv={values['overlapping_2d']:.2f})")
    proj = mds_project(embedded_sep, seed=args.seed)
    write_svg_scatter(run.add(out / "separated_xyy_mds.svg"), proj,
                      embedded_sep.labels, title="(x, y, y) embedding, MDS view")


def cmd_ensemble(args, run: _Run) -> None:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cfg = EnsembleConfig(n_datasets=args.n, seed=args.seed)

    if args.kind == "baseline":
        values, skipped = ensemble_gdv_values(cfg)
        edges = np.linspace(-0.6, 0.1, 71)
        counts, _ = np.histogram(np.clip(values, edges[0], edges[-1]), bins=edges)
        doc = {
            "schema": "gdv-ensemble/1",
            "kind": "baseline",
            "n_datasets": args.n,
            "seed": args.seed,
            "mean_gdv": float(values.mean()),
            "n_valid": int(values.size),
            "n_skipped": skipped,
        }
    else:
        stats = delta_gdv_experiment(cfg, args.kind)
        edges = stats.bin_edges
        counts = stats.hist_counts
        doc = {
            "schema": "gdv-ensemble/1",
            "kind": args.kind,
            "n_datasets": args.n,
            "seed": args.seed,
            "mean_before": stats.mean_before,
            "mean_delta": stats.mean_delta,
            "n_valid": stats.n_valid,
            "n_skipped": stats.n_skipped,
        }
    with open(run.add(out / f"{args.kind}.json"), "w", encoding="utf-8") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")
    with open(run.add(out / f"{args.kind}_hist.csv"), "w", encoding="utf-8") as f:
        f.write("bin_low,bin_high,count\n")
        for lo, hi, c in zip(edges[:-1], edges[1:], counts):
            f.write(f"{lo:.17g},{hi:.17g},{int(c)}\n")


def cmd_train_mlp(args, run: _Run) -> None:
    data = _load_dataset(args)
    cfg = MlpConfig(
        layer_widths=_parse_widths(args.widths),
        learning_rate=args.lr,
        epochs=args.epochs,
        batch_size=args.batch_size,
        seed=args.seed,
    )
    model = mlp_train(cfg, data)
    save_model(run.add(args.output), model)
    history_path = Path(args.output).with_suffix(".history.json")
    with open(run.add(history_path), "w", encoding="utf-8") as f:
        json.dump({"schema": "gdv-mlp-history/1", "epochs": model.training_history},
                  f, indent=2)
        f.write("\n")


def cmd_train_dbn(args, run: _Run) -> None:
    data = _load_dataset(args)
    model = dbn_train_greedy(
        _parse_widths(args.widths),
        data.points,
        epochs=args.epochs,
        learning_rate=args.lr,
        seed=args.seed,
        cd_steps=args.cd_steps,
        batch_size=args.batch_size,
    )
    save_model(run.add(args.output), model)


def cmd_probe(args, run: _Run) -> None:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    data = _load_dataset(args)
    model = load_model(args.model)
    if model_kind(args.model) == "mlp":
        layers = mlp_layer_activations(model, data)
    else:
        layers = dbn_layer_datasets(model, data)
    named = [(f"layer{i}", layer) for i, layer in enumerate(layers)]

    curve = gdv_curve(named)
    write_curve_csv(run.add(out / "gdv_curve.csv"), curve)
    write_svg_lines(run.add(out / "gdv_curve.svg"),
                    [("gdv(L)", curve.values)], title="GDV per layer")

    if args.scatter_layers:
        wanted = [int(i) for i in args.scatter_layers.split(",")]
    else:
        wanted = sorted({0, len(layers) // 2, len(layers) - 1})
    for index in wanted:
        if not 0 <= index < len(layers):
            raise ValidationError(f"scatter layer {index} out of range")
        proj = mds_project(layers[index], seed=args.seed)
        labels = layers[index].labels
        if proj.sample_indices is not None:
            labels = labels[proj.sample_indices]
        write_svg_scatter(run.add(out / f"mds_layer{index}.svg"), proj, labels,
                          title=f"layer {index}")


def cmd_dream(args, run: _Run) -> None:
    from PIL import Image

    model = load_model(args.model)
    if model_kind(args.model) != "dbn":
        raise ValidationError("dreaming requires a DBN checkpoint")
    data = _load_dataset(args)
    pip = prototype_reconstruct(model, args.layer, getattr(args, "class_id"), data)
    img = Image.fromarray((pip.image * 255).astype(np.uint8), mode="L")
    img.save(run.add(args.output))


# --- argument parsing -------------------------------------------------------


def _build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser], dict[str, list[str]]]:
    parser = argparse.ArgumentParser(
        prog="gdvkit",
        description="Class separability experiments via the generalized discrimination value.",
    )
    parser.add_argument("--config", help="TOML config file; one table per subcommand")
    parser.add_argument("--threads", type=int, default=None,
                        help="BLAS thread cap (default: GDV_THREADS or all cores)")
    subs = parser.add_subparsers(dest="subcommand", required=True)
    registry: dict[str, argparse.ArgumentParser] = {}
    # flags that must resolve after merging the config file, keyed by subcommand
    required: dict[str, list[str]] = {}

    def sub(name, func, **kwargs):
        p = subs.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        registry[name] = p
        required[name] = []
        return p

    def need(p, name, *names, **kwargs):
        action = p.add_argument(name, *names, **kwargs)
        required[p.prog.split()[-1]].append(action.dest)

    p = sub("gdv", cmd_gdv, help="score a labeled CSV (report) or .gdva archive (curve)")
    need(p, "--input", help="input .csv or .gdva path")
    need(p, "--output", help="output JSON (report) or CSV (curve)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub("fig1", cmd_fig1, help="two-cluster validation cases and embedding sweep")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    need(p, "--out-dir")

    p = sub("ensemble", cmd_ensemble, help="random-dataset ensemble experiments")
    p.add_argument("--kind", default="baseline",
                   choices=("baseline",) + TRANSFORM_KINDS)
    p.add_argument("--n", type=int, default=1000, help="ensemble size")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    need(p, "--out-dir")

    def add_data_flags(p):
        p.add_argument("--data", help="labeled CSV path or digits:<n>[:<classes>]")
        p.add_argument("--data-images", help="IDX image file (with --data-labels)")
        p.add_argument("--data-labels", help="IDX label file (with --data-images)")

    p = sub("train-mlp", cmd_train_mlp, help="train a dense classifier")
    add_data_flags(p)
    need(p, "--widths", help="comma list incl. input/output, e.g. 784,64,10")
    p.add_argument("--epochs", type=int, default=20)
    p.add_argument("--batch-size", type=int, default=64)
    p.add_argument("--lr", type=float, default=1e-3)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    need(p, "--output", help="checkpoint path (.gdvm)")

    p = sub("train-dbn", cmd_train_dbn, help="greedy contrastive-divergence stack")
    add_data_flags(p)
    need(p, "--widths", help="visible plus hidden widths, e.g. 784,256,256")
    p.add_argument("--epochs", type=int, default=10, help="epochs per layer")
    p.add_argument("--batch-size", type=int, default=64)
    p.add_argument("--lr", type=float, default=0.05)
    p.add_argument("--cd-steps", type=int, default=1)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    need(p, "--output", help="checkpoint path (.gdvm)")

    p = sub("probe", cmd_probe, help="layer-wise GDV curve and MDS scatters")
    need(p, "--model", help="checkpoint from train-mlp/train-dbn")
    add_data_flags(p)
    p.add_argument("--scatter-layers", help="comma list of layer indices to project")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    need(p, "--out-dir")

    p = sub("dream", cmd_dream, help="reconstruct a class prototype from a DBN layer")
    need(p, "--model", help="DBN checkpoint")
    add_data_flags(p)
    need(p, "--layer", type=int)
    need(p, "--class", dest="class_id", type=int)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    need(p, "--output", help="prototype image (PNG)")

    return parser, registry, required


def _load_toml(path: str) -> dict:
    try:
        import tomllib
    except ImportError:
        import tomli as tomllib
    with open(path, "rb") as f:
        return tomllib.load(f)


def _manifest_path(args) -> Path:
    if hasattr(args, "out_dir"):
        return _out_dir_manifest(args)
    return _sibling_manifest(args.output)


def main(argv=None) -> int:
    parser, registry, required = _build_parser()
    args = parser.parse_args(argv)

    if args.config:
        section = _load_toml(args.config).get(args.subcommand, {})
        known = {a.dest for a in registry[args.subcommand]._actions}
        unknown = set(section) - known
        if unknown:
            print(f"error: unknown config keys for {args.subcommand}: {sorted(unknown)}",
                  file=sys.stderr)
            return 2
        registry[args.subcommand].set_defaults(**section)
        args = parser.parse_args(argv)  # flags given explicitly still win

    missing = [d for d in required[args.subcommand] if getattr(args, d) is None]
    if missing:
        flags = ", ".join("--" + d.replace("_", "-") for d in missing)
        print(f"error: missing required arguments for {args.subcommand}: {flags}",
              file=sys.stderr)
        return 2

    threads = args.threads
    if threads is None:
        threads = int(os.environ.get("GDV_THREADS", os.cpu_count() or 1))
    _apply_thread_cap(threads)
    args.threads = threads

    run = _Run(args, _manifest_path(args))
    try:
        args.func(args, run)
    except ValidationError as e:
        run.write_manifest(e)
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except NonFiniteLoss as e:
        run.write_manifest(e)
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 3
    except (FormatError, OSError) as e:
        run.write_manifest(e)
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    run.write_manifest(None)
    return 0


if __name__ == "__main__":
    sys.exit(main())

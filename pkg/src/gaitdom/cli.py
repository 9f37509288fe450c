"""Command-line entry point.

Every pipeline is a pure function of (inputs, flags, seed); the seed is
recorded in a .meta.json sidecar next to each output, and --deterministic
drops timestamps so reruns are byte-for-byte identical. Errors exit nonzero
with a single machine-parsable line on stderr.
"""
from __future__ import annotations

import datetime
import json
import os
import sys

import click
import numpy as np

from . import __version__
from .classifier.crossval import cross_validate, grid_search
from .classifier.model_io import load_model, save_model
from .classifier.ovr import predict, train_ovr
from .classifier.svm import SvmHyperParams
from .engine.bench import CHARACTER_COUNTS, benchmark_update
from .engine.library import GaitLibrary
from .engine.scene import load_scene_config, run_scene_to_csv
from .errors import GaitdomError
from .features.extract import extract_features, read_features_csv, write_features_csv
from .mapping import (FIVE_LEVELS, THREE_LEVELS, aggregate_responses, collapse_label,
                      Label5, label_corpus, pca_dominance_axis, read_labels_csv,
                      read_responses_csv, write_labels_csv)
from .mocap.bvh import fk_all_frames, parse_bvh
from .mocap.gait_io import load_gait, load_gait_dir, save_gait
from .mocap.retarget import load_mapping, retarget


def _fail(code: str, message: str) -> None:
    click.echo(f"error: {code}: {message}", err=True)
    sys.exit(1)


def _write_meta(output_path: str, seed, deterministic: bool, extra: dict | None = None) -> None:
    meta = {"tool": f"gaitdom {__version__}", "seed": seed,
            "argv": sys.argv[1:]}
    if not deterministic:
        meta["created_at"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    if extra:
        meta.update(extra)
    with open(f"{output_path}.meta.json", "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=1, sort_keys=True)
        fh.write("\n")


def _input_files(path: str, suffix: str) -> list[str]:
    if os.path.isdir(path):
        return [os.path.join(path, n) for n in sorted(os.listdir(path))
                if n.endswith(suffix)]
    return [path]


@click.group()
@click.version_option(__version__)
def main():
    """Gait dominance toolkit."""


@main.command()
@click.option("--input", "input_path", required=True, help="BVH file or directory")
@click.option("--output", "output_path", required=True, help="gait JSON file or directory")
@click.option("--mapping", "mapping_path", required=True,
              help="raw-to-canonical joint name mapping (JSON)")
@click.option("--scale", default=1.0, show_default=True,
              help="unit scale applied to positions (CMU data conventionally needs 0.056444)")
@click.option("--fps-override", type=float, default=None,
              help="replace the file's frame rate")
@click.option("--source", default="bvh", show_default=True, help="dataset tag")
def convert(input_path, output_path, mapping_path, scale, fps_override, source):
    """Convert BVH files to canonical gait documents."""
    try:
        mapping = load_mapping(mapping_path)
        files = _input_files(input_path, ".bvh")
        many = len(files) > 1 or os.path.isdir(input_path)
        if many:
            os.makedirs(output_path, exist_ok=True)
        for path in files:
            with open(path, encoding="utf-8") as fh:
                hierarchy, motion, frame_time = parse_bvh(fh.read())
            fps = fps_override if fps_override else 1.0 / frame_time
            positions = fk_all_frames(hierarchy, motion) * scale
            gait_id = os.path.splitext(os.path.basename(path))[0]
            gait = retarget(positions, hierarchy.names, mapping, fps, gait_id, source)
            target = (os.path.join(output_path, f"{gait_id}.json") if many else output_path)
            save_gait(gait, target)
            click.echo(f"converted {path} -> {target} ({gait.n_frames} frames)")
    except (GaitdomError, OSError) as exc:
        _fail("convert", str(exc))


@main.command()
@click.option("--input", "input_path", required=True, help="gait JSON file or directory")
@click.option("--output", "output_path", required=True, help="features CSV")
@click.option("--deterministic", is_flag=True)
def features(input_path, output_path, deterministic):
    """Extract 29-dimensional feature vectors from gait files."""
    try:
        gaits = (load_gait_dir(input_path) if os.path.isdir(input_path)
                 else [load_gait(input_path)])
        rows = [extract_features(g) for g in gaits]
        write_features_csv(rows, output_path)
        _write_meta(output_path, seed=None, deterministic=deterministic,
                    extra={"gaits": len(rows)})
        click.echo(f"wrote {len(rows)} feature rows to {output_path}")
    except (GaitdomError, OSError) as exc:
        _fail("features", str(exc))


@main.command()
@click.option("--input", "input_path", required=True, help="responses CSV")
@click.option("--output", "output_path", required=True, help="labels CSV")
@click.option("--recompute-axis", is_flag=True,
              help="use the first principal axis of this corpus instead of the fixed coefficients")
@click.option("--deterministic", is_flag=True)
def label(input_path, output_path, recompute_axis, deterministic):
    """Aggregate responses, score dominance, and bucket into the five levels."""
    try:
        records = read_responses_csv(input_path)
        means = [m for m in aggregate_responses(records) if m.is_complete]
        axis = pca_dominance_axis(means) if recompute_axis else None
        labeled = label_corpus(means, axis=axis)
        write_labels_csv(labeled, output_path)
        extra = {"gaits": len(labeled)}
        if axis is not None:
            extra["axis"] = list(axis.coefficients)
            extra["explained_variance"] = axis.explained_variance
        _write_meta(output_path, seed=None, deterministic=deterministic, extra=extra)
        click.echo(f"labeled {len(labeled)} gaits -> {output_path}")
    except (GaitdomError, OSError) as exc:
        _fail("label", str(exc))


def _load_training_data(features_path, labels_path, levels):
    feats = read_features_csv(features_path)
    table = {item.gait_id: item for item in read_labels_csv(labels_path)}
    X, y = [], []
    for f in feats:
        if f.gait_id not in table:
            raise GaitdomError(f"gait {f.gait_id!r} has features but no label")
        X.append(f.values)
        item = table[f.gait_id]
        y.append(item.label3 if levels == 3 else item.label5)
    class_set = THREE_LEVELS if levels == 3 else FIVE_LEVELS
    return np.asarray(X), y, class_set


@main.command()
@click.option("--input", "features_path", required=True, help="features CSV")
@click.option("--labels", "labels_path", required=True, help="labels CSV")
@click.option("--output", "output_path", required=True, help="model JSON")
@click.option("--levels", type=click.Choice(["3", "5"]), default="5", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--c", "c_value", type=float, default=None, help="fixed SVM penalty C")
@click.option("--gamma", type=float, default=None, help="fixed RBF width")
@click.option("--grid/--no-grid", default=False,
              help="pick C and gamma by inner 5-fold grid search")
@click.option("--deterministic", is_flag=True)
def train(features_path, labels_path, output_path, levels, seed, c_value, gamma,
          grid, deterministic):
    """Train the one-vs-rest RBF SVM on labeled features."""
    try:
        X, y, class_set = _load_training_data(features_path, labels_path, int(levels))
        defaults = SvmHyperParams()
        if grid:
            params = grid_search(X, y, c_grid=(0.1, 1.0, 10.0, 100.0),
                                 gamma_grid=(0.01, 0.03, 1.0 / 29.0, 0.1, 0.3, 1.0),
                                 inner_k=5, seed=seed, class_set=class_set)
        else:
            params = SvmHyperParams(C=c_value if c_value else defaults.C,
                                    gamma=gamma if gamma else defaults.gamma)
        model = train_ovr(X, y, params, class_set, seed=seed)
        if not deterministic:
            model.metadata["trained_at"] = datetime.datetime.now(
                datetime.timezone.utc).isoformat()
        save_model(model, output_path)
        _write_meta(output_path, seed=seed, deterministic=deterministic,
                    extra={"levels": int(levels), "C": params.C, "gamma": params.gamma})
        click.echo(f"trained {levels}-level model on {len(y)} gaits -> {output_path}")
    except (GaitdomError, OSError) as exc:
        _fail("train", str(exc))


@main.command()
@click.option("--input", "input_path", required=True, help="gait JSON file or directory")
@click.option("--model", "model_path", required=True, help="model JSON")
def classify(input_path, model_path):
    """Predict dominance labels for gait files."""
    try:
        model = load_model(model_path)
        gaits = (load_gait_dir(input_path) if os.path.isdir(input_path)
                 else [load_gait(input_path)])
        click.echo("gait_id,label5,label3")
        for gait in gaits:
            feats = extract_features(gait)
            predicted, _ = predict(model, feats)
            if isinstance(predicted, Label5):
                five, three = predicted.value, collapse_label(predicted).value
            else:
                five, three = "", predicted.value
            click.echo(f"{gait.id},{five},{three}")
    except (GaitdomError, OSError) as exc:
        _fail("classify", str(exc))


@main.command()
@click.option("--input", "features_path", required=True, help="features CSV")
@click.option("--labels", "labels_path", required=True, help="labels CSV")
@click.option("--levels", type=click.Choice(["3", "5"]), default="3", show_default=True)
@click.option("--k", type=int, default=10, show_default=True)
@click.option("--iterations", type=int, default=20, show_default=True,
              help="repetitions of the k-fold protocol (the full protocol uses 2000)")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--c", "c_value", type=float, default=None)
@click.option("--gamma", type=float, default=None)
@click.option("--output", "output_path", default=None, help="optional JSON report")
@click.option("--deterministic", is_flag=True)
def crossval(features_path, labels_path, levels, k, iterations, seed, c_value, gamma,
             output_path, deterministic):
    """Run repeated stratified k-fold cross-validation."""
    try:
        X, y, class_set = _load_training_data(features_path, labels_path, int(levels))
        defaults = SvmHyperParams()
        params = SvmHyperParams(C=c_value if c_value else defaults.C,
                                gamma=gamma if gamma else defaults.gamma)
        report = cross_validate(X, y, k=k, iterations=iterations, seed=seed,
                                params=params, class_set=class_set)
        click.echo(f"k={report.k} iterations={report.iterations} "
                   f"mean_accuracy={report.mean_accuracy:.4f} "
                   f"stratified={report.stratified}")
        if output_path:
            doc = {"k": report.k, "iterations": report.iterations,
                   "seed": report.seed, "levels": int(levels),
                   "mean_accuracy": report.mean_accuracy,
                   "per_iteration_accuracy": list(report.per_iteration_accuracy),
                   "confusion": {f"{t.value}->{p.value}": c
                                 for (t, p), c in sorted(report.confusion.items(),
                                                         key=lambda kv: str(kv[0]))},
                   "stratified": report.stratified}
            with open(output_path, "w", encoding="utf-8") as fh:
                json.dump(doc, fh, indent=1)
                fh.write("\n")
            _write_meta(output_path, seed=seed, deterministic=deterministic)
    except (GaitdomError, OSError) as exc:
        _fail("crossval", str(exc))


def _load_library(gaits_dir: str, labels_path: str) -> GaitLibrary:
    gaits = {g.id: g for g in load_gait_dir(gaits_dir)}
    pairs = []
    for item in read_labels_csv(labels_path):
        if item.gait_id in gaits:
            pairs.append((gaits[item.gait_id], item.label5))
    if not pairs:
        raise GaitdomError("no gaits matched between the library and the labels file")
    return GaitLibrary.from_pairs(pairs)


@main.command()
@click.option("--input", "scene_path", required=True, help="scene config JSON")
@click.option("--gaits", "gaits_dir", required=True, help="directory of gait JSON files")
@click.option("--labels", "labels_path", required=True, help="labels CSV")
@click.option("--output", "output_path", required=True, help="trace CSV")
@click.option("--frames", type=int, default=600, show_default=True)
@click.option("--deterministic", is_flag=True)
def simulate(scene_path, gaits_dir, labels_path, output_path, frames, deterministic):
    """Play a scene of walking characters and export their root traces."""
    try:
        config = load_scene_config(scene_path)
        library = _load_library(gaits_dir, labels_path)
        run_scene_to_csv(config, library, frames, output_path)
        _write_meta(output_path, seed=config.seed, deterministic=deterministic,
                    extra={"frames": frames, "characters": len(config.characters)})
        click.echo(f"simulated {len(config.characters)} characters for {frames} frames "
                   f"-> {output_path}")
    except (GaitdomError, OSError) as exc:
        _fail("simulate", str(exc))


@main.command()
@click.option("--gaits", "gaits_dir", required=True, help="directory of gait JSON files")
@click.option("--labels", "labels_path", required=True, help="labels CSV")
@click.option("--frames", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=7, show_default=True)
def bench(gaits_dir, labels_path, frames, seed):
    """Measure mean frame update time for 1..100 characters."""
    try:
        library = _load_library(gaits_dir, labels_path)
        report = benchmark_update(library, frames=frames,
                                  character_counts=CHARACTER_COUNTS, seed=seed)
        click.echo("characters,mean_update_ms")
        for row in report.rows:
            click.echo(f"{row.n_characters},{row.mean_update_ms:.3f}")
    except (GaitdomError, OSError) as exc:
        _fail("bench", str(exc))


@main.command()
@click.option("--port", type=int, default=None, help="defaults to GAITDOM_PORT or 8000")
@click.option("--data-dir", default=None, help="defaults to GAITDOM_DATA or ./data")
@click.option("--seed", type=int, default=0, show_default=True,
              help="server seed mixed into session assignments")
def serve(port, data_dir, seed):
    """Run the study/classification HTTP service."""
    import uvicorn

    from .service.app import ServiceConfig, create_app

    port = port if port is not None else int(os.environ.get("GAITDOM_PORT", "8000"))
    data_dir = data_dir or os.environ.get("GAITDOM_DATA", "data")
    app = create_app(ServiceConfig(data_dir=data_dir, seed=seed))
    uvicorn.run(app, host="127.0.0.1", port=port)


if __name__ == "__main__":
    main()

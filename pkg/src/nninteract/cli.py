"""Command-line entry points.

Every command writes its outputs plus a ``manifest.json`` recording inputs,
seeds, and the package version, so runs are reproducible. Exit codes:
0 success, 2 configuration error, 3 data/file error, 4 numeric failure.
"""

import json
import os
import sys
from pathlib import Path

import click
import numpy as np

from . import __version__, synth
from .cutoff import find_cutoff, format_report
from .data import add_noise, load_csv, save_csv, split
from .detection import AVERAGING_KINDS, prune_subsets
from .errors import (ConfigError, DataError, MetricError, ModelFileError,
                     NetworkShapeError, NNInteractError, TrainingDivergedError)
from .experiments import (MAIN_HIDDEN, averaging_comparison, build_detector,
                          interaction_ranking, noise_sweep, pairwise_auc_table,
                          pairwise_matrix)
from .heatmap import save_heatmap
from .metrics import auc as auc_metric
from .modelio import load_model, save_model
from .training import TrainingConfig, train

EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4


def _env_seed(seed):
    if seed is not None:
        return seed
    return int(os.environ.get("NNINTERACT_SEED", "0"))


def _env_jobs(jobs):
    if jobs is not None:
        return jobs
    return int(os.environ.get("NNINTERACT_JOBS", "1"))


def _write_manifest(outdir, command, params):
    manifest = {"command": command, "version": __version__, "params": params}
    with open(Path(outdir) / "manifest.json", "w") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)


def _fail(code, tag, message):
    click.echo(f"ERROR {tag}: {message}", err=True)
    sys.exit(code)


def _run(command, fn):
    try:
        fn()
    except (ConfigError, click.ClickException) as exc:
        _fail(EXIT_CONFIG, "config", exc)
    except (DataError, ModelFileError, FileNotFoundError) as exc:
        _fail(EXIT_DATA, "data", exc)
    except (TrainingDivergedError, NetworkShapeError, MetricError,
            FloatingPointError) as exc:
        _fail(EXIT_NUMERIC, "numeric", exc)


@click.group()
def main():
    """Train small networks and detect feature interactions from their weights."""


@main.command("gen-data")
@click.option("--function", "function_id", default=None,
              help="Test-suite function id (F1..F10).")
@click.option("--large-p", is_flag=True, help="Use the sparse quadratic generator.")
@click.option("--n", default=30000, show_default=True)
@click.option("--p", default=1000, show_default=True, help="Features (large-p only).")
@click.option("--rank-terms", "K", default=5, show_default=True,
              help="Rank-one terms in the quadratic (large-p only).")
@click.option("--density", default=0.02, show_default=True)
@click.option("--noise-var", default=0.1, show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--out", "outdir", required=True, type=click.Path())
def gen_data(function_id, large_p, n, p, K, density, noise_var, seed, outdir):
    """Generate a synthetic dataset CSV plus its ground-truth interactions."""
    def go():
        seed_ = _env_seed(seed)
        os.makedirs(outdir, exist_ok=True)
        if large_p:
            data, truth = synth.generate_large_p(p, n, K, density, noise_var, seed_)
        elif function_id:
            data = synth.generate(function_id, n, seed_)
            truth = synth.ground_truth(function_id)
        else:
            raise ConfigError("provide --function or --large-p")
        save_csv(data, Path(outdir) / "data.csv")
        synth.save_ground_truth(truth, Path(outdir) / "ground_truth.txt")
        _write_manifest(outdir, "gen-data", {
            "function": function_id, "large_p": large_p, "n": n, "p": p,
            "K": K, "density": density, "noise_var": noise_var, "seed": seed_})
        click.echo(f"wrote {outdir}/data.csv ({data.n} rows, {data.p + 1} columns)")
    _run("gen-data", go)


def _parse_arch(text):
    try:
        sizes = tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise ConfigError(f"bad architecture {text!r}: {exc}") from exc
    if not sizes or any(s <= 0 for s in sizes):
        raise ConfigError(f"architecture sizes must be positive, got {text!r}")
    return sizes


@main.command("train")
@click.option("--data", "data_path", required=True, type=click.Path())
@click.option("--task", type=click.Choice(["regression", "classification"]),
              default="regression", show_default=True)
@click.option("--model", "kind", type=click.Choice(["mlp", "mlp-m"]),
              default="mlp-m", show_default=True)
@click.option("--arch", default=",".join(str(s) for s in MAIN_HIDDEN),
              show_default=True, help="Main-network hidden sizes.")
@click.option("--l1", default=5e-5, show_default=True)
@click.option("--l2", default=0.0, show_default=True)
@click.option("--learning-rate", default=5e-3, show_default=True)
@click.option("--batch-size", default=100, show_default=True)
@click.option("--max-epochs", default=500, show_default=True)
@click.option("--patience", default=20, show_default=True)
@click.option("--noise-sigma", default=None, type=float,
              help="Standard-scale and add feature/target noise before training.")
@click.option("--seed", type=int, default=None)
@click.option("--out", "outdir", required=True, type=click.Path())
def train_cmd(data_path, task, kind, arch, l1, l2, learning_rate, batch_size,
              max_epochs, patience, noise_sigma, seed, outdir):
    """Train a detector network on a CSV dataset and save the model."""
    def go():
        seed_ = _env_seed(seed)
        os.makedirs(outdir, exist_ok=True)
        data = load_csv(data_path, task=task)
        data = split(data, (1 / 3, 1 / 3, 1 / 3), seed_)
        if noise_sigma is not None:
            data = add_noise(data, noise_sigma, seed_ + 1)
        cfg = TrainingConfig(l1_strength=l1, l2_strength=l2,
                             learning_rate=learning_rate, batch_size=batch_size,
                             max_epochs=max_epochs, patience=patience, seed=seed_)
        model = build_detector(data.p, kind=kind, task=task, seed=seed_,
                               main_hidden=_parse_arch(arch))
        trained = train(model, data, cfg)
        save_model(model, Path(outdir) / "model.json")
        report = {
            "best_valid_loss": trained.best_valid_loss,
            "best_epoch": trained.best_epoch,
            "epochs_run": len(trained.train_curve),
            "train_curve": trained.train_curve,
            "valid_curve": trained.valid_curve,
        }
        with open(Path(outdir) / "training_report.json", "w") as f:
            json.dump(report, f, indent=2)
        _write_manifest(outdir, "train", {
            "data": str(data_path), "task": task, "model": kind, "arch": arch,
            "l1": l1, "l2": l2, "learning_rate": learning_rate,
            "batch_size": batch_size, "max_epochs": max_epochs,
            "patience": patience, "noise_sigma": noise_sigma, "seed": seed_})
        click.echo(f"best validation loss {trained.best_valid_loss:.6g} "
                   f"at epoch {trained.best_epoch}")
    _run("train", go)


def write_ranking_csv(ranked, path):
    with open(path, "w") as f:
        f.write("rank,indices,strength\n")
        for rank, (cand, strength) in enumerate(ranked, start=1):
            idx = ",".join(str(i) for i in cand)
            f.write(f'{rank},"{idx}",{strength!r}\n')


@main.command("rank")
@click.option("--model", "model_path", required=True, type=click.Path())
@click.option("--kind", type=click.Choice(AVERAGING_KINDS), default="minimum",
              show_default=True)
@click.option("--prune/--no-prune", default=False, show_default=True,
              help="Drop candidates that are subsets of higher-ranked ones.")
@click.option("--out", "outdir", required=True, type=click.Path())
def rank_cmd(model_path, kind, prune, outdir):
    """Rank variable-order interaction candidates from a saved model."""
    def go():
        os.makedirs(outdir, exist_ok=True)
        model = load_model(model_path)
        if model.main is None:
            raise ConfigError("model has no main network to rank from")
        ranked = interaction_ranking(model, kind)
        if prune:
            ranked = prune_subsets(ranked)
        write_ranking_csv(ranked, Path(outdir) / "ranking.csv")
        _write_manifest(outdir, "rank", {
            "model": str(model_path), "kind": kind, "prune": prune})
        click.echo(f"wrote {outdir}/ranking.csv ({len(ranked)} candidates)")
    _run("rank", go)


def write_matrix_csv(matrix, path):
    p = matrix.shape[0]
    names = [f"x{i}" for i in range(1, p + 1)]
    with open(path, "w") as f:
        f.write(",".join(names) + "\n")
        for row in matrix:
            f.write(",".join(repr(float(v)) for v in row) + "\n")


@main.command("pairwise")
@click.option("--model", "model_path", required=True, type=click.Path())
@click.option("--out", "outdir", required=True, type=click.Path())
def pairwise_cmd(model_path, outdir):
    """Emit the pairwise strength matrix as CSV and an SVG heatmap."""
    def go():
        os.makedirs(outdir, exist_ok=True)
        model = load_model(model_path)
        if model.main is None:
            raise ConfigError("model has no main network")
        M = pairwise_matrix(model)
        write_matrix_csv(M, Path(outdir) / "pairwise.csv")
        save_heatmap(M, Path(outdir) / "pairwise.svg",
                     labels=[f"x{i}" for i in range(1, M.shape[0] + 1)])
        _write_manifest(outdir, "pairwise", {"model": str(model_path)})
        click.echo(f"wrote {outdir}/pairwise.csv and {outdir}/pairwise.svg")
    _run("pairwise", go)


@main.command("cutoff")
@click.option("--model", "model_path", required=True, type=click.Path(),
              help="Trained reference model (provides ranking and reference metric).")
@click.option("--data", "data_path", required=True, type=click.Path())
@click.option("--task", type=click.Choice(["regression", "classification"]),
              default="regression", show_default=True)
@click.option("--k-max", default=20, show_default=True)
@click.option("--max-epochs", default=150, show_default=True)
@click.option("--patience", default=15, show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--out", "outdir", required=True, type=click.Path())
def cutoff_cmd(model_path, data_path, task, k_max, max_epochs, patience, seed, outdir):
    """Find the ranking cutoff by training additive models over top-K candidates."""
    def go():
        seed_ = _env_seed(seed)
        os.makedirs(outdir, exist_ok=True)
        model = load_model(model_path)
        if model.main is None:
            raise ConfigError("reference model has no main network")
        data = load_csv(data_path, task=task)
        data = split(data, (1 / 3, 1 / 3, 1 / 3), seed_)
        # Reference metric: retrain-free estimate from the saved model on the
        # validation split, in scaled units for regression.
        Xva, yva = data.subset("valid")
        if task == "regression":
            pred = model.predict(Xva)
            ys = model.scaler.y_std if model.scaler is not None else 1.0
            reference = float(np.sqrt(np.mean((pred - yva) ** 2)) / ys)
        else:
            reference = auc_metric(model.predict(Xva), yva.astype(int))
        ranked = interaction_ranking(model)
        cfg = TrainingConfig(l1_strength=0.0, l2_strength=1e-4,
                             max_epochs=max_epochs, patience=patience, seed=seed_)
        result = find_cutoff(ranked, data, reference, cfg, K_max=k_max)
        with open(Path(outdir) / "cutoff_report.txt", "w") as f:
            f.write(format_report(result))
        _write_manifest(outdir, "cutoff", {
            "model": str(model_path), "data": str(data_path), "task": task,
            "k_max": k_max, "max_epochs": max_epochs, "patience": patience,
            "seed": seed_})
        click.echo(f"K_stop={result.K_stop}, selected "
                   f"{len(result.selected)} interactions")
    _run("cutoff", go)


@main.command("evaluate")
@click.argument("protocol", type=click.Choice(["auc-table", "averaging", "noise"]))
@click.option("--functions", default="F1,F2,F3,F4,F5,F6,F7,F8,F9,F10",
              show_default=True)
@click.option("--trials", default=10, show_default=True)
@click.option("--n", default=30000, show_default=True)
@click.option("--max-epochs", default=100, show_default=True)
@click.option("--patience", default=10, show_default=True)
@click.option("--l1", default=5e-5, show_default=True)
@click.option("--jobs", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--out", "outdir", required=True, type=click.Path())
def evaluate_cmd(protocol, functions, trials, n, max_epochs, patience, l1,
                 jobs, seed, outdir):
    """Run a multi-trial evaluation protocol and write a report."""
    def go():
        seed_ = _env_seed(seed)
        jobs_ = _env_jobs(jobs)
        os.makedirs(outdir, exist_ok=True)
        fids = [tok.strip() for tok in functions.split(",") if tok.strip()]
        cfg = TrainingConfig(l1_strength=l1, max_epochs=max_epochs,
                             patience=patience, seed=seed_)
        if protocol == "auc-table":
            rows = pairwise_auc_table(fids, trials=trials, n=n, cfg=cfg, jobs=jobs_)
            with open(Path(outdir) / "auc_report.csv", "w") as f:
                f.write("function,mean_auc,std_auc,trials,dropped\n")
                for fid, s in rows:
                    f.write(f"{fid},{s.mean!r},{s.std!r},{len(s.values)},"
                            f"{s.trials_dropped}\n")
            click.echo(f"wrote {outdir}/auc_report.csv")
        elif protocol == "averaging":
            totals = averaging_comparison(fids, trials=trials, n=n, cfg=cfg,
                                          jobs=jobs_)
            with open(Path(outdir) / "averaging_report.csv", "w") as f:
                dets = sorted(next(iter(totals.values())).keys())
                f.write("kind," + ",".join(dets) + "\n")
                for kind, by_det in totals.items():
                    f.write(kind + "," + ",".join(str(by_det[d]) for d in dets) + "\n")
            click.echo(f"wrote {outdir}/averaging_report.csv")
        else:
            recalls = noise_sweep(fids, trials=trials, n=n, cfg=cfg, jobs=jobs_)
            with open(Path(outdir) / "noise_report.csv", "w") as f:
                f.write("sigma,mean_top_rank_recall\n")
                for sigma, rec in recalls.items():
                    f.write(f"{sigma!r},{rec!r}\n")
            click.echo(f"wrote {outdir}/noise_report.csv")
        _write_manifest(outdir, f"evaluate-{protocol}", {
            "functions": functions, "trials": trials, "n": n,
            "max_epochs": max_epochs, "patience": patience, "l1": l1,
            "jobs": jobs_, "seed": seed_})
    _run("evaluate", go)


if __name__ == "__main__":
    main()

"""Experiment harness: noise grids, equivalence sweeps, result CSVs.

Every run is driven by one JSON config (schema_version 1) and a master
seed, executes cells sequentially in a fixed order, and derives all
randomness from named integer seed tuples, so a rerun of the same config
produces byte-identical CSVs. Floats are serialized with repr (round-trip
exact); infinities and NaNs appear as the tokens "inf" and "nan".

Result CSVs carry no timing or host information; wall time and low-SNR
flags go to a JSON sidecar next to the CSV (<out>.meta.json), which is
allowed to differ between reruns.
"""

from __future__ import annotations

import csv
import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import datasets as ds
from .energy import (
    Variant,
    client_activation_energy,
    energy_equivalent_levels,
    write_energy_table,
)
from .network import (
    NetworkSpec,
    NetworkState,
    NoiseModel,
    QuantConfig,
    bind_embedding,
    init_state,
    ptq_calibrate,
    ptq_forward,
)
from .training import TrainConfig, evaluate, train

__all__ = [
    "SCHEMA_VERSION",
    "ResultRecord",
    "TaskData",
    "ExperimentConfig",
    "RESULT_COLUMNS",
    "BOUNDARY_COLUMNS",
    "csv_cell",
    "emit_csv",
    "write_meta_sidecar",
    "load_config",
    "build_task",
    "run_noise_grid",
    "run_equivalence_sweep",
    "run_training",
    "run_eval",
    "run_energy_table",
    "run_rf_gen",
]

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class ResultRecord:
    """One (cell, seed) outcome row; both experiment runners share it.

    `total_levels` is the constellation size of whatever the row trained
    or folded to (QAM total for complex rows, 1D level count otherwise);
    `side` is the QAM side defining the cell (isqrt of the cell's level
    budget); both are 0 on full-precision baseline rows. `seed` is the
    training seed for sweep rows and the noise-draw index for grid rows.
    Wall time is deliberately not a field: result CSVs must be
    byte-identical across reruns, so timing goes to the meta sidecar.
    """

    experiment: str
    variant: str
    total_levels: int
    side: int
    snr_db: float
    hidden_size: int
    seed: int
    test_accuracy: float
    accuracy_drop_vs_digital: float = math.nan
    activation_energy: float = math.nan


RESULT_COLUMNS = [
    "experiment",
    "variant",
    "total_levels",
    "side",
    "snr_db",
    "hidden_size",
    "seed",
    "test_accuracy",
    "accuracy_drop_vs_digital",
    "activation_energy",
]
BOUNDARY_COLUMNS = ["side", "total_levels", "boundary_snr_db"]


def csv_cell(value) -> str:
    """Canonical CSV text for one value: repr for floats (yielding the
    tokens inf/nan where applicable), plain str otherwise."""
    if isinstance(value, (float, np.floating)):
        return repr(float(value))  # np.float64 subclasses float; normalize
    if isinstance(value, (np.integer,)):
        return str(int(value))
    return str(value)


def emit_csv(records, columns: list[str], path: str | Path) -> None:
    """Write records (objects or dicts) as CSV with LF line endings."""
    with Path(path).open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        for rec in records:
            get = rec.get if isinstance(rec, dict) else lambda k: getattr(rec, k)
            writer.writerow([csv_cell(get(col)) for col in columns])


def read_results_csv(path: str | Path) -> list[ResultRecord]:
    """Read back a result CSV produced by emit_csv(RESULT_COLUMNS)."""
    with Path(path).open("r", newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != RESULT_COLUMNS:
            raise ValueError(f"{path}: expected columns {RESULT_COLUMNS}, got {header}")
        return [
            ResultRecord(
                experiment=row[0],
                variant=row[1],
                total_levels=int(row[2]),
                side=int(row[3]),
                snr_db=float(row[4]),
                hidden_size=int(row[5]),
                seed=int(row[6]),
                test_accuracy=float(row[7]),
                accuracy_drop_vs_digital=float(row[8]),
                activation_energy=float(row[9]),
            )
            for row in reader
        ]


def write_meta_sidecar(out_path: str | Path, payload: dict) -> Path:
    """Run metadata (timings, flags, config echo) next to a result CSV."""
    meta_path = Path(str(out_path) + ".meta.json")
    with meta_path.open("w", encoding="utf-8") as f:
        json.dump({"schema_version": SCHEMA_VERSION, **payload}, f, indent=2, sort_keys=True)
        f.write("\n")
    return meta_path


# --- configuration ------------------------------------------------------------


def parse_float_token(value) -> float:
    """JSON has no inf/nan literals; accept the string tokens too."""
    if isinstance(value, str):
        return float(value)
    return float(value)


@dataclass
class ExperimentConfig:
    """Parsed run configuration; see load_config for the JSON layout."""

    experiment: str
    dataset: dict
    model: dict = field(default_factory=dict)
    train: dict = field(default_factory=dict)
    grid: dict = field(default_factory=dict)
    sweep: dict = field(default_factory=dict)
    energy: dict = field(default_factory=dict)
    rf: dict = field(default_factory=dict)
    seed: int = 0
    out: str = "results.csv"
    checkpoint: str | None = None
    history: str | None = None
    raw: dict = field(default_factory=dict)


def load_config(path: str | Path, seed_override: int | None = None, out_override: str | None = None) -> ExperimentConfig:
    with Path(path).open("r", encoding="utf-8") as f:
        doc = json.load(f)
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ValueError(f"{path}: unsupported schema_version {version!r}")
    cfg = ExperimentConfig(
        experiment=doc.get("experiment", ""),
        dataset=doc.get("dataset", {}),
        model=doc.get("model", {}),
        train=doc.get("train", {}),
        grid=doc.get("grid", {}),
        sweep=doc.get("sweep", {}),
        energy=doc.get("energy", {}),
        rf=doc.get("rf", {}),
        seed=int(doc.get("seed", 0)),
        out=doc.get("out", "results.csv"),
        checkpoint=doc.get("checkpoint"),
        history=doc.get("history"),
        raw=doc,
    )
    if seed_override is not None:
        cfg.seed = seed_override
    if out_override is not None:
        cfg.out = out_override
    return cfg


def train_config_from(cfg: ExperimentConfig, seed: int, snr_db: float = math.inf) -> TrainConfig:
    t = cfg.train
    return TrainConfig(
        epochs=int(t.get("epochs", 30)),
        batch_size=int(t.get("batch_size", 128)),
        learning_rate=float(t.get("learning_rate", 1e-3)),
        seed=seed,
        snr_db=snr_db,
    )


# --- task assembly -------------------------------------------------------------


@dataclass
class TaskData:
    """One classification task in both input representations.

    Complex-network inputs are token ids (embed mode, images) or complex
    sequences (direct mode, RF); the real-network view is [0, 1] pixel
    reals or interleaved re/im pairs. input_scale applies to direct-mode
    inputs of either representation.
    """

    name: str
    n_classes: int
    train_inputs_cx: np.ndarray
    test_inputs_cx: np.ndarray
    train_inputs_real: np.ndarray
    test_inputs_real: np.ndarray
    train_labels: np.ndarray
    test_labels: np.ndarray
    input_mode_cx: str
    input_scale: float


def _image_task(name: str, train_imgs: np.ndarray, train_labels: np.ndarray, test_imgs: np.ndarray, test_labels: np.ndarray) -> TaskData:
    return TaskData(
        name=name,
        n_classes=10,
        train_inputs_cx=train_imgs.astype(np.int64),
        test_inputs_cx=test_imgs.astype(np.int64),
        train_inputs_real=ds.real_input_view(train_imgs),
        test_inputs_real=ds.real_input_view(test_imgs),
        train_labels=np.asarray(train_labels, dtype=np.int64),
        test_labels=np.asarray(test_labels, dtype=np.int64),
        input_mode_cx="embed",
        input_scale=1.0,
    )


def build_task(dataset_cfg: dict) -> TaskData:
    """Dataset config -> TaskData.

    kinds: "rf" (synthetic modulation classification), "synthetic_digits"
    (seeded glyph stand-in exercised through the IDX pipeline in tests),
    and "idx" (IDX image/label files on disk).
    """
    kind = dataset_cfg.get("kind")
    if kind == "rf":
        k = int(dataset_cfg.get("classes", 4))
        T = int(dataset_cfg.get("T", 32))
        snr = parse_float_token(dataset_cfg.get("channel_snr_db", "inf"))
        seed = int(dataset_cfg.get("seed", 0))
        n_train = int(dataset_cfg.get("train_per_class", 500))
        n_test = int(dataset_cfg.get("test_per_class", 250))
        train_set = ds.generate_rf_dataset(k, n_train, T=T, channel_snr_db=snr, seed=seed)
        test_set = ds.generate_rf_dataset(k, n_test, T=T, channel_snr_db=snr, seed=seed + 1)
        train_feats = ds.rf_feature_view(train_set.sequences)
        test_feats = ds.rf_feature_view(test_set.sequences)
        return TaskData(
            name=f"rf{k}",
            n_classes=k,
            train_inputs_cx=train_feats,
            test_inputs_cx=test_feats,
            train_inputs_real=train_feats.view(float),
            test_inputs_real=test_feats.view(float),
            train_labels=train_set.labels,
            test_labels=test_set.labels,
            input_mode_cx="direct",
            input_scale=float(dataset_cfg.get("input_scale", 0.5)),
        )
    if kind == "synthetic_digits":
        n_train = int(dataset_cfg.get("n_train", 8000))
        n_test = int(dataset_cfg.get("n_test", 2000))
        seed = int(dataset_cfg.get("seed", 0))
        tr_img, tr_lab, te_img, te_lab = ds.make_synthetic_digits(n_train, n_test, seed=seed)
        return _image_task(
            "synthetic",
            ds._downsample_batch(tr_img),
            tr_lab,
            ds._downsample_batch(te_img),
            te_lab,
        )
    if kind == "idx":
        train_set = ds.load_idx(
            dataset_cfg["train_images"], dataset_cfg.get("train_labels"), "train", dataset_cfg.get("name", "mnist")
        )
        test_set = ds.load_idx(
            dataset_cfg["test_images"], dataset_cfg.get("test_labels"), "test", dataset_cfg.get("name", "mnist")
        )
        return _image_task(train_set.name, train_set.images, train_set.labels, test_set.images, test_set.labels)
    raise ValueError(f"unknown dataset kind {dataset_cfg.get('kind')!r}")


def _cx_input_dim(task: TaskData) -> int:
    return task.train_inputs_cx.shape[1]


def qam_spec(task: TaskData, hidden: int, quant: QuantConfig) -> NetworkSpec:
    return NetworkSpec(
        layer_sizes=(_cx_input_dim(task), hidden, task.n_classes),
        complex_valued=True,
        input_mode=task.input_mode_cx,
        input_scale=task.input_scale if task.input_mode_cx == "direct" else 1.0,
        quant=quant,
    )


def real_spec(task: TaskData, hidden: int, quant: QuantConfig) -> NetworkSpec:
    return NetworkSpec(
        layer_sizes=(task.train_inputs_real.shape[1], hidden, task.n_classes),
        complex_valued=False,
        input_mode="direct",
        input_scale=task.input_scale,
        quant=quant,
    )


def _task_inputs(task: TaskData, complex_valued: bool):
    if complex_valued:
        return task.train_inputs_cx, task.test_inputs_cx
    return task.train_inputs_real, task.test_inputs_real


def _calibration_rows(train_in: np.ndarray, n: int) -> np.ndarray:
    """Deterministic calibration subset strided across the training set.

    Training data may be ordered by class (the RF generator emits class
    blocks), so a head slice would calibrate on one class only; a stride
    over the full index range keeps every class represented.
    """
    count = min(int(n), train_in.shape[0])
    idx = np.unique(np.linspace(0, train_in.shape[0] - 1, count).astype(np.int64))
    return train_in[idx]


def _train_model(task: TaskData, spec: NetworkSpec, cfg: ExperimentConfig, seed: int) -> tuple[NetworkState, float]:
    """Init + train one model; returns (state, test accuracy)."""
    train_in, test_in = _task_inputs(task, spec.complex_valued)
    state = init_state(spec, seed=seed)
    train(state, train_in, task.train_labels, train_config_from(cfg, seed))
    return state, evaluate(state, test_in, task.test_labels)


# --- noise grid ----------------------------------------------------------------

DEFAULT_SIDES = [2, 4, 8, 16, 32, 64, 128]
DEFAULT_SNRS_DB = [math.inf, 40.0, 30.0, 25.0, 20.0, 15.0, 10.0, 5.0]


def run_noise_grid(cfg: ExperimentConfig) -> tuple[list[ResultRecord], Path]:
    """PTQ accuracy across (QAM side, readout SNR) cells.

    One full-precision complex network is trained per hidden size (seeded
    by the master seed) and reused across the whole grid; per side one
    PTQ fold is shared by the SNR sweep, and every cell is evaluated
    under seeds_per_cell independent noise draws, each from
    default_rng([master_seed, noise_seed_index, cell_index]). Emits the
    grid CSV, a 5-percentage-point boundary CSV per side, and a meta
    sidecar with wall time and below-unity-SNR flags.
    """
    started = time.monotonic()
    task = build_task(cfg.dataset)
    hiddens = [int(h) for h in cfg.grid.get("hidden", [cfg.model.get("hidden", 16)])]
    sides = [int(s) for s in cfg.grid.get("sides", DEFAULT_SIDES)]
    snrs = [parse_float_token(s) for s in cfg.grid.get("snrs_db", DEFAULT_SNRS_DB)]
    seeds_per_cell = int(cfg.grid.get("seeds_per_cell", 3))
    calib_n = int(cfg.grid.get("calibration_rows", 512))

    records: list[ResultRecord] = []
    low_snr_cells = []
    train_in, test_in = _task_inputs(task, True)
    calib = _calibration_rows(train_in, calib_n)
    for hi, hidden in enumerate(hiddens):
        fp_spec = qam_spec(task, hidden, QuantConfig())
        state, digital_acc = _train_model(task, fp_spec, cfg, cfg.seed)
        for si, side in enumerate(sides):
            quant = QuantConfig(kind="qam", n_total=side * side)
            ptq = bind_embedding(ptq_calibrate(state, calib, quant), state)
            energy = client_activation_energy(fp_spec.layer_sizes, side * side, Variant.QAMNET)
            for ni, snr in enumerate(snrs):
                cell_index = (hi * len(sides) + si) * len(snrs) + ni
                noise = None if math.isinf(snr) else NoiseModel(snr_db=snr)
                if snr < 0:
                    low_snr_cells.append({"side": side, "snr_db": snr, "hidden": hidden})
                for seed_idx in range(seeds_per_cell):
                    rng = np.random.default_rng([cfg.seed, seed_idx, cell_index])
                    logits = ptq_forward(ptq, test_in, noise=noise, rng=rng)
                    acc = float((logits.argmax(axis=1) == task.test_labels).mean())
                    records.append(
                        ResultRecord(
                            experiment="noise_grid",
                            variant="QAMNet-PTQ",
                            total_levels=side * side,
                            side=side,
                            snr_db=snr,
                            hidden_size=hidden,
                            seed=seed_idx,
                            test_accuracy=acc,
                            accuracy_drop_vs_digital=(digital_acc - acc) * 100.0,
                            activation_energy=energy,
                        )
                    )
    emit_csv(records, RESULT_COLUMNS, cfg.out)
    boundary_path = _boundary_csv(records, sides, snrs, cfg.out)
    write_meta_sidecar(
        cfg.out,
        {
            "experiment": "noise_grid",
            "wall_time_s": time.monotonic() - started,
            "low_snr_cells": low_snr_cells,
            "boundary_csv": str(boundary_path),
            "config": cfg.raw,
        },
    )
    return records, Path(cfg.out)


def _boundary_csv(records: list[ResultRecord], sides: list[int], snrs: list[float], out: str | Path) -> Path:
    """Per side, the lowest tested finite SNR whose mean drop (and that of
    every higher tested SNR) stays within 5 percentage points."""
    finite = sorted((s for s in snrs if math.isfinite(s)), reverse=True)
    rows = []
    for side in sides:
        boundary = math.nan
        for snr in finite:
            drops = [
                r.accuracy_drop_vs_digital
                for r in records
                if r.side == side and r.snr_db == snr
            ]
            if drops and sum(drops) / len(drops) <= 5.0:
                boundary = snr
            else:
                break
        rows.append({"side": side, "total_levels": side * side, "boundary_snr_db": boundary})
    path = Path(str(out)).with_suffix(".boundary.csv")
    emit_csv(rows, BOUNDARY_COLUMNS, path)
    return path


# --- equivalence sweep -----------------------------------------------------------

DEFAULT_N_TOTALS = [4, 16, 64, 256]
SWEEP_VARIANTS = [v.value for v in Variant] + ["QAMNetFP", "Baseline1DFP"]


def _variant_quant(variant: str, n_total: int) -> tuple[QuantConfig, int, bool]:
    """(quant config, per-axis/1D level count, complex?) for one sweep cell."""
    side = math.isqrt(n_total)
    if side * side != n_total:
        raise ValueError(f"sweep n_total {n_total} is not a perfect square")
    if variant == Variant.QAMNET.value:
        return QuantConfig(kind="qam", n_total=n_total), side, True
    if variant == Variant.LEVEL_EQ_1D.value:
        return QuantConfig(kind="levels", n_total=n_total), n_total, False
    if variant == Variant.HARDWARE_EQ_1D.value:
        return QuantConfig(kind="levels", n_total=side), side, False
    if variant == Variant.ENERGY_EQ_1D.value:
        levels = energy_equivalent_levels(n_total)
        return QuantConfig(kind="levels", n_total=levels), levels, False
    raise ValueError(f"unknown sweep variant {variant!r}")


def run_equivalence_sweep(cfg: ExperimentConfig) -> tuple[list[ResultRecord], Path]:
    """QAT accuracy of the four equivalence variants across constellation
    sizes and hidden widths, plus full-precision baselines of both
    architectures.

    Every (variant, n_total, hidden, seed) cell retrains from scratch
    with seed master_seed + seed_index, so cells are independent and
    reproducible.
    """
    started = time.monotonic()
    task = build_task(cfg.dataset)
    hiddens = [int(h) for h in cfg.sweep.get("hidden", [cfg.model.get("hidden", 16)])]
    n_totals = [int(n) for n in cfg.sweep.get("n_totals", DEFAULT_N_TOTALS)]
    seeds_per_cell = int(cfg.sweep.get("seeds_per_cell", 3))
    variants = cfg.sweep.get("variants", SWEEP_VARIANTS)

    records: list[ResultRecord] = []
    for hidden in hiddens:
        for variant in variants:
            if variant in ("QAMNetFP", "Baseline1DFP"):
                complex_net = variant == "QAMNetFP"
                spec_fn = qam_spec if complex_net else real_spec
                for seed_idx in range(seeds_per_cell):
                    seed = cfg.seed + seed_idx
                    _, acc = _train_model(task, spec_fn(task, hidden, QuantConfig()), cfg, seed)
                    records.append(
                        ResultRecord(
                            experiment="equivalence_sweep",
                            variant=variant,
                            total_levels=0,
                            side=0,
                            snr_db=math.inf,
                            hidden_size=hidden,
                            seed=seed,
                            test_accuracy=acc,
                        )
                    )
                continue
            for n_total in n_totals:
                quant, _, complex_net = _variant_quant(variant, n_total)
                spec_fn = qam_spec if complex_net else real_spec
                spec = spec_fn(task, hidden, quant)
                energy = client_activation_energy(spec.layer_sizes, quant.n_total, variant)
                for seed_idx in range(seeds_per_cell):
                    seed = cfg.seed + seed_idx
                    _, acc = _train_model(task, spec, cfg, seed)
                    records.append(
                        ResultRecord(
                            experiment="equivalence_sweep",
                            variant=variant,
                            total_levels=quant.n_total,
                            side=math.isqrt(n_total),
                            snr_db=math.inf,
                            hidden_size=hidden,
                            seed=seed,
                            test_accuracy=acc,
                            activation_energy=energy,
                        )
                    )
    emit_csv(records, RESULT_COLUMNS, cfg.out)
    write_meta_sidecar(
        cfg.out,
        {
            "experiment": "equivalence_sweep",
            "wall_time_s": time.monotonic() - started,
            "config": cfg.raw,
        },
    )
    return records, Path(cfg.out)


# --- single-model commands -------------------------------------------------------


def _model_spec(cfg: ExperimentConfig, task: TaskData) -> NetworkSpec:
    m = cfg.model
    hidden = int(m.get("hidden", 16))
    quant_cfg = m.get("quant", {"kind": "none", "n_total": 0})
    quant = QuantConfig(kind=quant_cfg.get("kind", "none"), n_total=int(quant_cfg.get("n_total", 0)))
    if m.get("type", "qamnet") == "qamnet":
        return qam_spec(task, hidden, quant)
    return real_spec(task, hidden, quant)


def run_training(cfg: ExperimentConfig) -> dict:
    """Train one model per the config; write checkpoint and history CSV."""
    from .network import save_checkpoint
    from .training import write_history_csv

    task = build_task(cfg.dataset)
    spec = _model_spec(cfg, task)
    train_in, test_in = _task_inputs(task, spec.complex_valued)
    state = init_state(spec, seed=cfg.seed)
    history = train(
        state,
        train_in,
        task.train_labels,
        train_config_from(cfg, cfg.seed),
        eval_raw=test_in,
        eval_labels=task.test_labels,
    )
    if cfg.checkpoint:
        save_checkpoint(state, cfg.checkpoint)
    if cfg.history:
        write_history_csv(history, cfg.history)
    return {
        "dataset": task.name,
        "train_accuracy": history.final_train_accuracy,
        "eval_accuracy": history.final_eval_accuracy,
        "epochs": len(history.records),
        "checkpoint": cfg.checkpoint,
        "history": cfg.history,
    }


def run_eval(cfg: ExperimentConfig) -> dict:
    """Evaluate a checkpoint; optional PTQ fold and readout noise."""
    from .network import load_checkpoint

    if not cfg.checkpoint:
        raise ValueError("eval requires a checkpoint path in the config")
    state = load_checkpoint(cfg.checkpoint)
    task = build_task(cfg.dataset)
    train_in, test_in = _task_inputs(task, state.spec.complex_valued)
    snr = parse_float_token(cfg.model.get("snr_db", "inf"))
    noise = None if math.isinf(snr) else NoiseModel(snr_db=snr)
    rng = np.random.default_rng([cfg.seed, 0]) if noise else None
    backend = cfg.model.get("backend", "digital")
    ptq_cfg = cfg.model.get("ptq")
    if ptq_cfg:
        quant = QuantConfig(kind=ptq_cfg["kind"], n_total=int(ptq_cfg["n_total"]))
        calib = _calibration_rows(train_in, int(cfg.model.get("calibration_rows", 512)))
        ptq = bind_embedding(ptq_calibrate(state, calib, quant), state)
        logits = ptq_forward(ptq, test_in, backend=backend, noise=noise, rng=rng)
        accuracy = float((logits.argmax(axis=1) == task.test_labels).mean())
        mode = f"ptq-{quant.kind}-{quant.n_total}"
    else:
        accuracy = evaluate(state, test_in, task.test_labels, backend=backend, noise=noise, rng=rng)
        mode = state.spec.quant.kind
    return {
        "dataset": task.name,
        "mode": mode,
        "backend": backend,
        "snr_db": snr,
        "n_test": int(len(task.test_labels)),
        "accuracy": accuracy,
    }


def emit_energy_table(n_list, sizes, path) -> None:
    """Write the four-variant energy table for each N; `sizes` is (w, h, c)."""
    w, h, c = (int(s) for s in sizes)
    write_energy_table([int(n) for n in n_list], w=w, h=h, c=c, path=path)


def run_energy_table(cfg: ExperimentConfig) -> dict:
    e = cfg.energy
    n_totals = [int(n) for n in e.get("n_totals", DEFAULT_N_TOTALS)]
    emit_energy_table(
        n_totals,
        (e.get("w", 7), e.get("h", 16), e.get("c", 10)),
        cfg.out,
    )
    return {"out": cfg.out, "n_totals": n_totals}


def run_rf_gen(cfg: ExperimentConfig) -> dict:
    r = cfg.rf
    dataset = ds.generate_rf_dataset(
        int(r.get("classes", 4)),
        int(r.get("n_per_class", 500)),
        T=int(r.get("T", 32)),
        channel_snr_db=parse_float_token(r.get("channel_snr_db", "inf")),
        seed=cfg.seed,
    )
    ds.write_rf_csv(dataset, cfg.out)
    return {
        "out": cfg.out,
        "n_samples": len(dataset),
        "classes": list(dataset.class_names),
    }

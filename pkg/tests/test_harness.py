import json
import math

import numpy as np
import pytest

from qamnet import cli, harness
from qamnet.datasets import read_rf_csv, write_idx_images, write_idx_labels
from qamnet.energy import ENERGY_TABLE_COLUMNS
from qamnet.harness import (
    BOUNDARY_COLUMNS,
    RESULT_COLUMNS,
    ResultRecord,
    build_task,
    csv_cell,
    emit_csv,
    load_config,
    parse_float_token,
    run_energy_table,
    run_equivalence_sweep,
    run_eval,
    run_noise_grid,
    run_rf_gen,
    run_training,
    write_meta_sidecar,
)


# --- CSV plumbing -----------------------------------------------------------------


def test_csv_cell_tokens():
    assert csv_cell(0.1) == "0.1"
    assert csv_cell(math.inf) == "inf"
    assert csv_cell(-math.inf) == "-inf"
    assert csv_cell(math.nan) == "nan"
    assert csv_cell(np.float64(0.25)) == "0.25"
    assert csv_cell(np.int64(7)) == "7"
    assert csv_cell("QAMNet") == "QAMNet"
    assert csv_cell(3) == "3"


def test_emit_csv_layout_and_roundtrip(tmp_path):
    rec = ResultRecord(
        experiment="noise_grid",
        variant="QAMNet-PTQ",
        total_levels=16,
        side=4,
        snr_db=math.inf,
        hidden_size=16,
        seed=0,
        test_accuracy=0.9375,
        accuracy_drop_vs_digital=0.625,
        activation_energy=292.5,
    )
    path = tmp_path / "r.csv"
    emit_csv([rec], RESULT_COLUMNS, path)
    text = path.read_text()
    lines = text.splitlines()
    assert lines[0] == ",".join(RESULT_COLUMNS)
    assert lines[1] == "noise_grid,QAMNet-PTQ,16,4,inf,16,0,0.9375,0.625,292.5"
    assert "\r" not in text
    # parsed floats round-trip exactly
    fields = lines[1].split(",")
    assert float(fields[7]) == rec.test_accuracy
    assert math.isinf(parse_float_token(fields[4]))


def test_emit_csv_empty_is_header_only(tmp_path):
    path = tmp_path / "empty.csv"
    emit_csv([], RESULT_COLUMNS, path)
    assert path.read_text() == ",".join(RESULT_COLUMNS) + "\n"


def test_read_results_csv_roundtrip(tmp_path):
    recs = [
        ResultRecord("noise_grid", "QAMNet-PTQ", 16, 4, math.inf, 16, 0, 0.9375, 0.625, 292.5),
        ResultRecord("equivalence_sweep", "QAMNetFP", 0, 0, math.inf, 16, 5, 0.96, 0.0, math.nan),
    ]
    path = tmp_path / "r.csv"
    emit_csv(recs, RESULT_COLUMNS, path)
    back = harness.read_results_csv(path)
    assert back[0] == recs[0]
    assert back[1].variant == "QAMNetFP" and math.isnan(back[1].activation_energy)
    # nan fields break naive dataclass equality; compare the rest directly
    assert (back[1].experiment, back[1].total_levels, back[1].seed, back[1].test_accuracy) == (
        "equivalence_sweep", 0, 5, 0.96,
    )


def test_read_results_csv_rejects_foreign_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("alpha,beta\n1,2\n")
    with pytest.raises(ValueError, match="expected columns"):
        harness.read_results_csv(path)


def test_emit_energy_table_matches_module_writer(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    harness.emit_energy_table([4, 16], (7, 16, 10), a)
    from qamnet.energy import write_energy_table

    write_energy_table([4, 16], w=7, h=16, c=10, path=b)
    assert a.read_bytes() == b.read_bytes()


def test_parse_float_token():
    assert parse_float_token("inf") == math.inf
    assert parse_float_token("-inf") == -math.inf
    assert math.isnan(parse_float_token("nan"))
    assert parse_float_token(12.5) == 12.5
    assert parse_float_token("3.25") == 3.25


def test_write_meta_sidecar(tmp_path):
    out = tmp_path / "res.csv"
    meta_path = write_meta_sidecar(out, {"experiment": "x", "wall_time_s": 1.25})
    assert meta_path == tmp_path / "res.csv.meta.json"
    doc = json.loads(meta_path.read_text())
    assert doc["schema_version"] == harness.SCHEMA_VERSION
    assert doc["experiment"] == "x"


# --- configuration -----------------------------------------------------------------


def _write_config(tmp_path, doc, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return p


def test_load_config_defaults_and_overrides(tmp_path):
    p = _write_config(tmp_path, {"experiment": "noise_grid", "dataset": {"kind": "rf"}})
    cfg = load_config(p)
    assert cfg.seed == 0
    assert cfg.out == "results.csv"
    cfg = load_config(p, seed_override=9, out_override="elsewhere.csv")
    assert cfg.seed == 9
    assert cfg.out == "elsewhere.csv"


def test_load_config_rejects_unknown_schema(tmp_path):
    p = _write_config(tmp_path, {"schema_version": 2, "experiment": "x"})
    with pytest.raises(ValueError, match="schema_version"):
        load_config(p)


# --- task assembly -------------------------------------------------------------------


def test_build_task_rf_features():
    task = build_task({"kind": "rf", "classes": 3, "train_per_class": 10,
                       "test_per_class": 5, "T": 16, "seed": 1})
    assert task.name == "rf3"
    assert task.n_classes == 3
    assert task.train_inputs_cx.shape == (30, 6)
    assert task.train_inputs_real.shape == (30, 12)
    assert task.input_mode_cx == "direct"
    assert np.array_equal(task.train_inputs_real[:, 0::2], task.train_inputs_cx.real)


def test_build_task_synthetic_digits():
    task = build_task({"kind": "synthetic_digits", "n_train": 50, "n_test": 20, "seed": 0})
    assert task.train_inputs_cx.shape == (50, 49)
    assert task.train_inputs_cx.dtype == np.int64
    assert task.input_mode_cx == "embed"
    assert task.train_inputs_real.max() <= 1.0


def test_build_task_idx(tmp_path):
    rng = np.random.default_rng(0)
    for split in ("train", "test"):
        write_idx_images(tmp_path / f"{split}-images-idx3-ubyte",
                         rng.integers(0, 256, (6, 28, 28), dtype=np.uint8))
        write_idx_labels(tmp_path / f"{split}-labels-idx1-ubyte",
                         rng.integers(0, 10, 6).astype(np.uint8))
    task = build_task({
        "kind": "idx",
        "train_images": str(tmp_path / "train-images-idx3-ubyte"),
        "test_images": str(tmp_path / "test-images-idx3-ubyte"),
    })
    assert task.train_inputs_cx.shape == (6, 49)
    assert task.test_labels.shape == (6,)


def test_build_task_unknown_kind():
    with pytest.raises(ValueError, match="dataset kind"):
        build_task({"kind": "audio"})


def test_calibration_rows_cover_class_blocks():
    # class-blocked data: a head slice would only see class 0
    blocks = np.repeat(np.arange(4), 100)[:, None].astype(float)
    rows = harness._calibration_rows(blocks, 40)
    assert set(np.unique(rows.ravel())) == {0.0, 1.0, 2.0, 3.0}
    assert len(rows) <= 40
    again = harness._calibration_rows(blocks, 40)
    assert np.array_equal(rows, again)


# --- experiment runners ----------------------------------------------------------------


def _grid_config(tmp_path, **overrides):
    doc = {
        "schema_version": 1,
        "experiment": "noise_grid",
        "dataset": {"kind": "rf", "classes": 3, "train_per_class": 80,
                     "test_per_class": 40, "T": 16, "seed": 0},
        "model": {"hidden": 8},
        "train": {"epochs": 6, "batch_size": 32},
        "grid": {"sides": [4, 32], "snrs_db": ["inf", 20.0, -5.0],
                 "seeds_per_cell": 2, "calibration_rows": 128},
        "seed": 0,
        "out": str(tmp_path / "grid.csv"),
    }
    doc.update(overrides)
    return _write_config(tmp_path, doc, "grid.json")


def test_run_noise_grid_end_to_end(tmp_path):
    records, out = run_noise_grid(load_config(_grid_config(tmp_path)))
    assert len(records) == 2 * 3 * 2  # sides x snrs x seeds
    lines = out.read_text().splitlines()
    assert lines[0] == ",".join(RESULT_COLUMNS)
    assert len(lines) == 13
    # every requested cell is present, seeds_per_cell rows each
    for side in (4, 32):
        for snr in (math.inf, 20.0, -5.0):
            cells = [r for r in records if r.side == side and r.snr_db == snr]
            assert len(cells) == 2
    # drop is consistent with a shared digital reference per hidden size
    digital = {r.test_accuracy + r.accuracy_drop_vs_digital / 100.0 for r in records}
    assert len({round(d, 12) for d in digital}) == 1
    # noiseless rows are noise-seed independent
    quiet = [r for r in records if r.side == 32 and math.isinf(r.snr_db)]
    assert quiet[0].test_accuracy == quiet[1].test_accuracy


def test_run_noise_grid_boundary_and_sidecar(tmp_path):
    records, out = run_noise_grid(load_config(_grid_config(tmp_path)))
    boundary = out.with_suffix(".boundary.csv")
    lines = boundary.read_text().splitlines()
    assert lines[0] == ",".join(BOUNDARY_COLUMNS)
    assert len(lines) == 3  # one per side
    assert lines[2].startswith("32,1024,")
    meta = json.loads((tmp_path / "grid.csv.meta.json").read_text())
    assert meta["schema_version"] == 1
    assert meta["experiment"] == "noise_grid"
    assert meta["wall_time_s"] > 0
    assert len(meta["low_snr_cells"]) == 2  # snr -5 dB per side
    assert meta["config"]["grid"]["seeds_per_cell"] == 2


def test_run_noise_grid_byte_identical_rerun(tmp_path):
    cfg_path = _grid_config(tmp_path)
    _, out = run_noise_grid(load_config(cfg_path))
    first = out.read_bytes()
    first_boundary = out.with_suffix(".boundary.csv").read_bytes()
    run_noise_grid(load_config(cfg_path))
    assert out.read_bytes() == first
    assert out.with_suffix(".boundary.csv").read_bytes() == first_boundary


def _sweep_config(tmp_path):
    return _write_config(tmp_path, {
        "schema_version": 1,
        "experiment": "equivalence_sweep",
        "dataset": {"kind": "rf", "classes": 3, "train_per_class": 60,
                     "test_per_class": 30, "T": 16, "seed": 0},
        "model": {"hidden": 6},
        "train": {"epochs": 3, "batch_size": 32},
        "sweep": {"n_totals": [16], "seeds_per_cell": 2},
        "seed": 5,
        "out": str(tmp_path / "sweep.csv"),
    }, "sweep.json")


def test_run_equivalence_sweep_records(tmp_path):
    records, out = run_equivalence_sweep(load_config(_sweep_config(tmp_path)))
    assert len(records) == 4 * 2 + 2 * 2  # variants x seeds + FP baselines x seeds
    by_variant = {}
    for r in records:
        by_variant.setdefault(r.variant, []).append(r)
    assert by_variant["QAMNet"][0].total_levels == 16
    assert by_variant["LevelEq1D"][0].total_levels == 16
    assert by_variant["HardwareEq1D"][0].total_levels == 4
    assert by_variant["EnergyEq1D"][0].total_levels == 6
    for r in records:
        assert math.isinf(r.snr_db)
        assert 0.0 <= r.test_accuracy <= 1.0
    assert {r.seed for r in by_variant["QAMNet"]} == {5, 6}
    # complex activations cost two modulators but the 1D net sees 2x inputs
    qam = by_variant["QAMNet"][0].activation_energy
    hw = by_variant["HardwareEq1D"][0].activation_energy
    assert qam == (6 + 6) * 2 * 2.25
    assert hw == (12 + 6) * 2.25
    for v in ("QAMNetFP", "Baseline1DFP"):
        assert by_variant[v][0].total_levels == 0
        assert math.isnan(by_variant[v][0].activation_energy)
    lines = out.read_text().splitlines()
    assert lines[0] == ",".join(RESULT_COLUMNS)
    assert len(lines) == 13


def test_run_equivalence_sweep_deterministic(tmp_path):
    cfg_path = _sweep_config(tmp_path)
    _, out = run_equivalence_sweep(load_config(cfg_path))
    first = out.read_bytes()
    run_equivalence_sweep(load_config(cfg_path))
    assert out.read_bytes() == first


def test_sweep_rejects_non_square_totals():
    with pytest.raises(ValueError, match="perfect square"):
        harness._variant_quant("QAMNet", 8)
    with pytest.raises(ValueError, match="variant"):
        harness._variant_quant("Qam", 16)


def _train_config(tmp_path):
    return _write_config(tmp_path, {
        "schema_version": 1,
        "experiment": "train",
        "dataset": {"kind": "rf", "classes": 3, "train_per_class": 60,
                     "test_per_class": 30, "T": 16, "seed": 0},
        "model": {"type": "qamnet", "hidden": 8,
                   "quant": {"kind": "qam", "n_total": 64}},
        "train": {"epochs": 4, "batch_size": 32},
        "seed": 1,
        "checkpoint": str(tmp_path / "model.json"),
        "history": str(tmp_path / "history.csv"),
    }, "train.json")


def test_run_training_writes_artifacts(tmp_path):
    cfg = load_config(_train_config(tmp_path))
    summary = run_training(cfg)
    assert summary["dataset"] == "rf3"
    assert summary["epochs"] == 4
    assert 0.0 <= summary["eval_accuracy"] <= 1.0
    assert (tmp_path / "model.json").exists()
    history = (tmp_path / "history.csv").read_text().splitlines()
    assert history[0] == "epoch,train_loss,train_accuracy,eval_accuracy"
    assert len(history) == 5


def test_run_eval_digital_and_ptq(tmp_path):
    run_training(load_config(_train_config(tmp_path)))
    eval_doc = {
        "schema_version": 1,
        "experiment": "eval",
        "dataset": {"kind": "rf", "classes": 3, "train_per_class": 60,
                     "test_per_class": 30, "T": 16, "seed": 0},
        "checkpoint": str(tmp_path / "model.json"),
        "seed": 1,
    }
    p = _write_config(tmp_path, eval_doc, "eval.json")
    plain = run_eval(load_config(p))
    assert plain["mode"] == "qam"
    assert plain["n_test"] == 90
    assert 0.0 <= plain["accuracy"] <= 1.0

    eval_doc["model"] = {"ptq": {"kind": "qam", "n_total": 1024},
                          "snr_db": 20.0, "calibration_rows": 64}
    p2 = _write_config(tmp_path, eval_doc, "eval2.json")
    folded = run_eval(load_config(p2))
    assert folded["mode"] == "ptq-qam-1024"
    assert folded["snr_db"] == 20.0
    # same config, same seed -> same noisy accuracy
    assert run_eval(load_config(p2)) == folded


def test_run_eval_requires_checkpoint(tmp_path):
    p = _write_config(tmp_path, {"experiment": "eval", "dataset": {"kind": "rf"}}, "e.json")
    with pytest.raises(ValueError, match="checkpoint"):
        run_eval(load_config(p))


def test_run_energy_table(tmp_path):
    p = _write_config(tmp_path, {
        "experiment": "energy_table",
        "energy": {"n_totals": [16], "w": 7, "h": 16, "c": 10},
        "out": str(tmp_path / "table.csv"),
    }, "energy.json")
    summary = run_energy_table(load_config(p))
    assert summary["n_totals"] == [16]
    lines = (tmp_path / "table.csv").read_text().splitlines()
    assert lines[0] == ",".join(ENERGY_TABLE_COLUMNS)
    assert lines[1] == "QAMNet,16,2.0,1940,2.25"


def test_run_rf_gen(tmp_path):
    p = _write_config(tmp_path, {
        "experiment": "rf_gen",
        "rf": {"classes": 4, "n_per_class": 5, "T": 8, "channel_snr_db": 15.0},
        "seed": 2,
        "out": str(tmp_path / "rf.csv"),
    }, "rf.json")
    summary = run_rf_gen(load_config(p))
    assert summary["n_samples"] == 20
    assert summary["classes"] == ["BPSK", "QPSK", "8PSK", "16QAM"]
    back = read_rf_csv(tmp_path / "rf.csv")
    assert len(back) == 20
    assert np.all(back.snr_db == 15.0)


# --- CLI ----------------------------------------------------------------------------


def test_cli_energy_table_success(tmp_path, capsys):
    p = _write_config(tmp_path, {
        "experiment": "energy_table",
        "energy": {"n_totals": [16, 64]},
        "out": str(tmp_path / "table.csv"),
    }, "energy.json")
    rc = cli.main(["energy-table", "--config", str(p)])
    assert rc == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert len(out) == 1
    doc = json.loads(out[0])
    assert doc["command"] == "energy-table"
    assert (tmp_path / "table.csv").exists()


def test_cli_out_and_seed_overrides(tmp_path, capsys):
    p = _write_config(tmp_path, {
        "experiment": "rf_gen",
        "rf": {"classes": 2, "n_per_class": 3, "T": 4},
        "seed": 0,
        "out": str(tmp_path / "a.csv"),
    }, "rf.json")
    assert cli.main(["rf-gen", "--config", str(p), "--out", str(tmp_path / "b.csv")]) == 0
    assert not (tmp_path / "a.csv").exists()
    assert (tmp_path / "b.csv").exists()
    capsys.readouterr()
    assert cli.main(["rf-gen", "--config", str(p), "--out", str(tmp_path / "c.csv"),
                     "--seed", "1"]) == 0
    capsys.readouterr()
    assert (tmp_path / "b.csv").read_bytes() != (tmp_path / "c.csv").read_bytes()


def test_cli_train_out_overrides_checkpoint(tmp_path, capsys):
    p = _train_config(tmp_path)
    rc = cli.main(["train", "--config", str(p), "--out", str(tmp_path / "other.json")])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out.strip())
    assert doc["checkpoint"] == str(tmp_path / "other.json")
    assert (tmp_path / "other.json").exists()


def test_cli_error_is_json_line_exit_2(tmp_path, capsys):
    p = _write_config(tmp_path, {"experiment": "eval", "dataset": {"kind": "rf"}}, "e.json")
    rc = cli.main(["eval", "--config", str(p)])
    assert rc == 2
    captured = capsys.readouterr()
    assert captured.out == ""
    err = json.loads(captured.err.strip())
    assert err["error"] == "ValueError"
    assert "checkpoint" in err["message"]


def test_cli_missing_config_file_is_json_error(tmp_path, capsys):
    rc = cli.main(["noise-grid", "--config", str(tmp_path / "missing.json")])
    assert rc == 2
    err = json.loads(capsys.readouterr().err.strip())
    assert err["error"] == "FileNotFoundError"


def test_cli_usage_error_is_json_line(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["no-such-command"])
    assert exc.value.code == 2
    err = json.loads(capsys.readouterr().err.strip())
    assert err["error"] == "UsageError"


def test_cli_grid_smoke(tmp_path, capsys):
    cfg_path = _grid_config(tmp_path, grid={"sides": [4], "snrs_db": ["inf"],
                                             "seeds_per_cell": 1,
                                             "calibration_rows": 64})
    rc = cli.main(["noise-grid", "--config", str(cfg_path)])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out.strip())
    assert doc["rows"] == 1
    assert doc["out"] == str(tmp_path / "grid.csv")

import math

import numpy as np
import pytest

from qamnet.datasets import (
    MODULATION_CATALOG,
    IdxFormatError,
    ImageDataset,
    downsample_7x7,
    generate_rf_dataset,
    load_idx,
    make_synthetic_digits,
    modulation_symbols,
    read_idx_images,
    read_idx_labels,
    read_rf_csv,
    real_input_view,
    rf_feature_view,
    write_idx_images,
    write_idx_labels,
    write_rf_csv,
)


# --- IDX parsing -------------------------------------------------------------


def _write_pair(tmp_path, images, labels):
    ip = tmp_path / "t-images-idx3-ubyte"
    lp = tmp_path / "t-labels-idx1-ubyte"
    write_idx_images(ip, images)
    write_idx_labels(lp, labels)
    return ip, lp


def test_idx_roundtrip(tmp_path):
    rng = np.random.default_rng(0)
    images = rng.integers(0, 256, size=(5, 28, 28), dtype=np.uint8)
    labels = rng.integers(0, 10, size=5).astype(np.uint8)
    ip, lp = _write_pair(tmp_path, images, labels)
    assert np.array_equal(read_idx_images(ip), images)
    assert np.array_equal(read_idx_labels(lp), labels)


def test_idx_bad_magic(tmp_path):
    path = tmp_path / "bad"
    path.write_bytes(b"\x00\x00\x12\x34" + b"\x00" * 12)
    with pytest.raises(IdxFormatError, match="magic"):
        read_idx_images(path)
    with pytest.raises(IdxFormatError, match="magic"):
        read_idx_labels(path)


def test_idx_truncated_body(tmp_path):
    images = np.zeros((2, 28, 28), dtype=np.uint8)
    ip, _ = _write_pair(tmp_path, images, np.zeros(2, dtype=np.uint8))
    data = ip.read_bytes()
    ip.write_bytes(data[:-10])
    with pytest.raises(IdxFormatError, match="truncated"):
        read_idx_images(ip)


def test_idx_trailing_bytes(tmp_path):
    images = np.zeros((1, 28, 28), dtype=np.uint8)
    ip, _ = _write_pair(tmp_path, images, np.zeros(1, dtype=np.uint8))
    ip.write_bytes(ip.read_bytes() + b"\x00")
    with pytest.raises(IdxFormatError, match="trailing"):
        read_idx_images(ip)


def test_idx_label_out_of_range(tmp_path):
    lp = tmp_path / "labels"
    write_idx_labels(lp, np.array([1, 10, 3], dtype=np.uint8))
    with pytest.raises(IdxFormatError, match="out of range"):
        read_idx_labels(lp)


def test_load_idx_guesses_label_path(tmp_path):
    rng = np.random.default_rng(1)
    images = rng.integers(0, 256, size=(3, 28, 28), dtype=np.uint8)
    labels = np.array([7, 0, 9], dtype=np.uint8)
    ip, _ = _write_pair(tmp_path, images, labels)
    ds = load_idx(ip, split="test", name="mnist")
    assert isinstance(ds, ImageDataset)
    assert ds.images.shape == (3, 49)
    assert ds.images.dtype == np.uint8
    assert np.array_equal(ds.labels, labels)
    assert ds.split == "test"
    # batch downsampling matches the single-image reference path
    for row, img in zip(ds.images, images):
        assert np.array_equal(row, downsample_7x7(img))


def test_load_idx_count_mismatch(tmp_path):
    ip, lp = _write_pair(
        tmp_path, np.zeros((2, 28, 28), dtype=np.uint8), np.zeros(3, dtype=np.uint8)
    )
    with pytest.raises(IdxFormatError, match="labels for"):
        load_idx(ip, lp)


def test_load_idx_rejects_other_geometry(tmp_path):
    ip = tmp_path / "t-images-idx3-ubyte"
    write_idx_images(ip, np.zeros((2, 14, 14), dtype=np.uint8))
    write_idx_labels(tmp_path / "t-labels-idx1-ubyte", np.zeros(2, dtype=np.uint8))
    with pytest.raises(IdxFormatError, match="28x28"):
        load_idx(ip)


# --- downsampling and input views ---------------------------------------------


def test_downsample_block_means():
    img = np.zeros((28, 28), dtype=np.uint8)
    img[0:4, 0:4] = 255  # full block
    img[4:8, 0:2] = 255  # half block: mean 127.5 rounds half up to 128
    out = downsample_7x7(img)
    assert out.shape == (49,)
    assert out[0] == 255
    assert out[7] == 128
    assert out[1:7].max() == 0


def test_downsample_rejects_wrong_shape():
    with pytest.raises(ValueError):
        downsample_7x7(np.zeros((14, 14)))


def test_real_input_view_bounds():
    v = real_input_view(np.array([0, 128, 255], dtype=np.uint8))
    assert v[0] == 0.0
    assert v[2] == 1.0
    assert v.dtype == float


# --- RF task -------------------------------------------------------------------


def test_modulation_symbols_unit_power():
    for name in MODULATION_CATALOG:
        pts = modulation_symbols(name)
        assert np.mean(np.abs(pts) ** 2) == pytest.approx(1.0, rel=1e-12)
    assert modulation_symbols("BPSK").tolist() == [-1.0, 1.0]
    assert modulation_symbols("16QAM").size == 16
    assert modulation_symbols("64QAM").size == 64
    with pytest.raises(ValueError):
        modulation_symbols("OOK")


def test_generate_rf_dataset_shapes_and_blocks():
    ds = generate_rf_dataset(k_classes=3, n_per_class=4, T=16, seed=5)
    assert ds.sequences.shape == (12, 16)
    assert ds.labels.tolist() == [0] * 4 + [1] * 4 + [2] * 4
    assert ds.class_names == MODULATION_CATALOG[:3]
    assert np.all(np.isinf(ds.snr_db))


def test_generate_rf_dataset_noiseless_on_constellation():
    ds = generate_rf_dataset(k_classes=2, n_per_class=3, T=8, seed=2)
    for seq, label in zip(ds.sequences, ds.labels):
        pts = modulation_symbols(ds.class_names[label])
        dist = np.abs(seq[:, None] - pts[None, :]).min(axis=1)
        assert dist.max() < 1e-12


def test_generate_rf_dataset_channel_noise_and_determinism():
    a = generate_rf_dataset(4, 5, T=8, channel_snr_db=10.0, seed=7)
    b = generate_rf_dataset(4, 5, T=8, channel_snr_db=10.0, seed=7)
    c = generate_rf_dataset(4, 5, T=8, channel_snr_db=10.0, seed=8)
    assert np.array_equal(a.sequences, b.sequences)
    assert not np.array_equal(a.sequences, c.sequences)
    assert np.all(a.snr_db == 10.0)
    clean = generate_rf_dataset(4, 5, T=8, seed=7)
    assert not np.allclose(a.sequences, clean.sequences)


def test_generate_rf_dataset_validation():
    with pytest.raises(ValueError):
        generate_rf_dataset(k_classes=1, n_per_class=2)
    with pytest.raises(ValueError):
        generate_rf_dataset(k_classes=9, n_per_class=2)
    with pytest.raises(ValueError):
        generate_rf_dataset(k_classes=2, n_per_class=0)


def test_rf_feature_view_bpsk_exact():
    # noiseless BPSK symbols are +-1, so every power of x is 1
    ds = generate_rf_dataset(k_classes=2, n_per_class=4, T=32, seed=3)
    feats = rf_feature_view(ds.sequences)
    assert feats.shape == (8, 6)
    bpsk = feats[ds.labels == 0]
    assert np.allclose(bpsk[:, 0], 1.0)  # m20
    assert np.allclose(bpsk[:, 1], 0.5)  # m40
    assert np.allclose(bpsk[:, 2], 0.25)  # m80
    assert np.allclose(bpsk[:, 3], 0.5)  # m42
    assert np.allclose(bpsk[:, 4], 0.0)  # c42
    assert np.allclose(bpsk[:, 5], 0.0)  # c63


def test_rf_feature_view_qpsk_fourth_moment():
    # QPSK fourth powers all land on -1 regardless of the symbol draw
    ds = generate_rf_dataset(k_classes=2, n_per_class=4, T=16, seed=9)
    feats = rf_feature_view(ds.sequences)
    qpsk = feats[ds.labels == 1]
    assert np.allclose(qpsk[:, 1], -0.5)


def test_rf_feature_view_separates_formats():
    ds = generate_rf_dataset(k_classes=4, n_per_class=8, T=64, seed=11)
    feats = rf_feature_view(ds.sequences)
    means = np.array([feats[ds.labels == k].mean(axis=0) for k in range(4)])
    for i in range(4):
        for j in range(i + 1, 4):
            assert np.abs(means[i] - means[j]).max() > 0.05


def test_rf_feature_view_rejects_1d():
    with pytest.raises(ValueError):
        rf_feature_view(np.zeros(8, dtype=complex))


def test_rf_csv_roundtrip(tmp_path):
    ds = generate_rf_dataset(3, 4, T=5, channel_snr_db=12.5, seed=1)
    path = tmp_path / "rf.csv"
    write_rf_csv(ds, path)
    header = path.read_text().splitlines()[0]
    assert header == "label,snr_db," + ",".join(f"re{t},im{t}" for t in range(5))
    back = read_rf_csv(path)
    assert np.array_equal(back.sequences, ds.sequences)
    assert np.array_equal(back.labels, ds.labels)
    assert np.array_equal(back.snr_db, ds.snr_db)
    assert back.class_names == ds.class_names


def test_rf_csv_roundtrip_infinite_snr(tmp_path):
    ds = generate_rf_dataset(2, 2, T=3, seed=4)
    path = tmp_path / "rf.csv"
    write_rf_csv(ds, path)
    back = read_rf_csv(path)
    assert np.all(np.isinf(back.snr_db))
    assert np.array_equal(back.sequences, ds.sequences)


def test_rf_csv_rejects_foreign_header(tmp_path):
    path = tmp_path / "other.csv"
    path.write_text("a,b,c\n1,2,3\n")
    with pytest.raises(ValueError):
        read_rf_csv(path)


# --- synthetic digits -----------------------------------------------------------


def test_synthetic_digits_shapes_and_dtype():
    tr_x, tr_y, te_x, te_y = make_synthetic_digits(40, 20, seed=0)
    assert tr_x.shape == (40, 28, 28) and tr_x.dtype == np.uint8
    assert te_x.shape == (20, 28, 28)
    assert tr_y.shape == (40,) and te_y.shape == (20,)
    assert set(np.unique(tr_y)) <= set(range(10))
    assert tr_x.max() > 128  # strokes render bright


def test_synthetic_digits_deterministic():
    a = make_synthetic_digits(30, 10, seed=3)
    b = make_synthetic_digits(30, 10, seed=3)
    c = make_synthetic_digits(30, 10, seed=4)
    for x, y in zip(a, b):
        assert np.array_equal(x, y)
    assert not np.array_equal(a[0], c[0])
    # train and test halves come from independent draws
    assert not np.array_equal(a[0][:10], a[2][:10])


def test_synthetic_digits_cover_all_classes():
    _, tr_y, _, te_y = make_synthetic_digits(200, 100, seed=1)
    assert set(np.unique(tr_y)) == set(range(10))
    assert set(np.unique(te_y)) == set(range(10))


def test_synthetic_digits_learnable_shape_signal():
    # block-mean profiles of distinct digits should differ clearly
    tr_x, tr_y, _, _ = make_synthetic_digits(300, 10, seed=2)
    flat = np.stack([downsample_7x7(img).astype(float) for img in tr_x])
    mean0 = flat[tr_y == 0].mean(axis=0)
    mean1 = flat[tr_y == 1].mean(axis=0)
    assert np.abs(mean0 - mean1).max() > 30

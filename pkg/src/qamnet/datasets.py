"""Dataset ingestion and generation.

Image data arrives as big-endian IDX files (the MNIST family layout),
gets validated at 28x28, and is block-mean downsampled to 7x7 pixel
indices in the 0..255 vocabulary. A seeded glyph generator can produce a
synthetic stand-in dataset in the same IDX format for offline runs.

The RF task is a desk-scale modulation-format classification problem:
sequences of unit-power constellation symbols pushed through a complex
AWGN channel at a configurable SNR.
"""

from __future__ import annotations

import csv
import math
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "ImageDataset",
    "RFDataset",
    "IdxFormatError",
    "MODULATION_CATALOG",
    "read_idx_images",
    "read_idx_labels",
    "write_idx_images",
    "write_idx_labels",
    "load_idx",
    "downsample_7x7",
    "real_input_view",
    "modulation_symbols",
    "generate_rf_dataset",
    "rf_feature_view",
    "write_rf_csv",
    "read_rf_csv",
    "make_synthetic_digits",
]

_IMAGE_MAGIC = 0x00000803
_LABEL_MAGIC = 0x00000801


class IdxFormatError(ValueError):
    """Raised on malformed IDX files; messages carry byte offsets."""


@dataclass(frozen=True)
class ImageDataset:
    """Downsampled image classification data: N x 49 pixel indices."""

    images: np.ndarray  # (N, 49) uint8 vocabulary indices
    labels: np.ndarray  # (N,) int in 0..9
    split: str  # "train" | "test"
    name: str  # "mnist" | "fashion" | "kmnist" | "synthetic"

    def __post_init__(self) -> None:
        if self.images.ndim != 2 or self.images.shape[1] != 49:
            raise ValueError(f"images must be (N, 49), got {self.images.shape}")
        if self.labels.shape != (self.images.shape[0],):
            raise ValueError("label count must match image count")
        if self.images.size and (self.images.min() < 0 or self.images.max() > 255):
            raise ValueError("pixel indices must be in 0..255")

    def __len__(self) -> int:
        return self.images.shape[0]


@dataclass(frozen=True)
class RFDataset:
    """Modulation-classification sequences with per-sample channel SNR."""

    sequences: np.ndarray  # (N, T) complex
    labels: np.ndarray  # (N,) int in 0..k-1
    snr_db: np.ndarray  # (N,) float, channel SNR per sample
    class_names: tuple[str, ...]

    def __post_init__(self) -> None:
        n = self.sequences.shape[0]
        if self.labels.shape != (n,) or self.snr_db.shape != (n,):
            raise ValueError("labels and snr_db must be per-sample")

    def __len__(self) -> int:
        return self.sequences.shape[0]


def _read_exact(f, count: int, path: Path, what: str) -> bytes:
    offset = f.tell()
    data = f.read(count)
    if len(data) != count:
        raise IdxFormatError(
            f"{path}: truncated {what} at byte {offset}: expected {count} bytes, got {len(data)}"
        )
    return data


def read_idx_images(path: str | Path) -> np.ndarray:
    """Parse an IDX image file into a (N, rows, cols) uint8 array."""
    path = Path(path)
    with path.open("rb") as f:
        magic, n, rows, cols = struct.unpack(">IIII", _read_exact(f, 16, path, "header"))
        if magic != _IMAGE_MAGIC:
            raise IdxFormatError(f"{path}: bad image magic 0x{magic:08x} at byte 0, expected 0x{_IMAGE_MAGIC:08x}")
        body = _read_exact(f, n * rows * cols, path, "pixel data")
        if f.read(1):
            raise IdxFormatError(f"{path}: trailing bytes after offset {16 + n * rows * cols}")
    return np.frombuffer(body, dtype=np.uint8).reshape(n, rows, cols)


def read_idx_labels(path: str | Path) -> np.ndarray:
    """Parse an IDX label file into a (N,) uint8 array of classes 0..9."""
    path = Path(path)
    with path.open("rb") as f:
        magic, n = struct.unpack(">II", _read_exact(f, 8, path, "header"))
        if magic != _LABEL_MAGIC:
            raise IdxFormatError(f"{path}: bad label magic 0x{magic:08x} at byte 0, expected 0x{_LABEL_MAGIC:08x}")
        body = _read_exact(f, n, path, "label data")
    labels = np.frombuffer(body, dtype=np.uint8)
    bad = np.nonzero(labels > 9)[0]
    if bad.size:
        raise IdxFormatError(f"{path}: label {labels[bad[0]]} out of range 0..9 at byte {8 + int(bad[0])}")
    return labels


def write_idx_images(path: str | Path, images: np.ndarray) -> None:
    images = np.asarray(images, dtype=np.uint8)
    if images.ndim != 3:
        raise ValueError(f"expected (N, rows, cols), got {images.shape}")
    with Path(path).open("wb") as f:
        f.write(struct.pack(">IIII", _IMAGE_MAGIC, *images.shape))
        f.write(images.tobytes())


def write_idx_labels(path: str | Path, labels: np.ndarray) -> None:
    labels = np.asarray(labels, dtype=np.uint8)
    with Path(path).open("wb") as f:
        f.write(struct.pack(">II", _LABEL_MAGIC, labels.shape[0]))
        f.write(labels.tobytes())


def downsample_7x7(image: np.ndarray) -> np.ndarray:
    """28x28 -> 49 pixel indices by 4x4 block-mean pooling.

    Block means are rounded half away from zero to the nearest integer
    (inputs are non-negative, so half-up) and stay inside 0..255.
    """
    image = np.asarray(image)
    if image.shape != (28, 28):
        raise ValueError(f"expected a 28x28 image, got {image.shape}")
    blocks = image.astype(float).reshape(7, 4, 7, 4).mean(axis=(1, 3))
    return np.clip(np.floor(blocks + 0.5), 0, 255).astype(np.uint8).ravel()


def _downsample_batch(images: np.ndarray) -> np.ndarray:
    blocks = images.astype(float).reshape(-1, 7, 4, 7, 4).mean(axis=(2, 4))
    return np.clip(np.floor(blocks + 0.5), 0, 255).astype(np.uint8).reshape(-1, 49)


def _guess_label_path(images_path: Path) -> Path:
    name = images_path.name
    for a, b in (("images-idx3", "labels-idx1"), ("images.idx3", "labels.idx1"), ("images", "labels")):
        if a in name:
            return images_path.with_name(name.replace(a, b, 1))
    raise IdxFormatError(f"cannot derive a label file name from {images_path}; pass labels_path explicitly")


def load_idx(
    images_path: str | Path,
    labels_path: str | Path | None = None,
    split: str = "train",
    name: str = "mnist",
) -> ImageDataset:
    """Load an IDX image/label pair, validate 28x28, downsample to 7x7."""
    images_path = Path(images_path)
    labels_path = Path(labels_path) if labels_path is not None else _guess_label_path(images_path)
    raw = read_idx_images(images_path)
    if raw.shape[1:] != (28, 28):
        raise IdxFormatError(f"{images_path}: expected 28x28 images, got {raw.shape[1]}x{raw.shape[2]}")
    labels = read_idx_labels(labels_path)
    if labels.shape[0] != raw.shape[0]:
        raise IdxFormatError(
            f"{labels_path}: {labels.shape[0]} labels for {raw.shape[0]} images"
        )
    return ImageDataset(_downsample_batch(raw), labels.astype(np.int64), split, name)


def real_input_view(img: np.ndarray) -> np.ndarray:
    """Pixel indices -> reals in [0, 1] (the 1D-network input path)."""
    img = np.asarray(img)
    return img.astype(float) / 255.0


# --- synthetic RF modulation task -------------------------------------------

MODULATION_CATALOG = ("BPSK", "QPSK", "8PSK", "16QAM", "4PAM", "64QAM", "16PSK", "8PAM")


def modulation_symbols(name: str) -> np.ndarray:
    """Unit-average-power constellation points of a catalog format."""
    if name == "BPSK":
        pts = np.array([-1.0, 1.0], dtype=complex)
    elif name == "QPSK":
        pts = np.exp(1j * (np.pi / 4.0 + np.pi / 2.0 * np.arange(4)))
    elif name == "8PSK":
        pts = np.exp(1j * (np.pi / 4.0 * np.arange(8)))
    elif name == "16PSK":
        pts = np.exp(1j * (np.pi / 8.0 * np.arange(16)))
    elif name == "16QAM":
        axis = np.array([-3.0, -1.0, 1.0, 3.0])
        pts = (axis[:, None] + 1j * axis[None, :]).ravel()
    elif name == "64QAM":
        axis = np.arange(-7.0, 8.0, 2.0)
        pts = (axis[:, None] + 1j * axis[None, :]).ravel()
    elif name == "4PAM":
        pts = np.array([-3.0, -1.0, 1.0, 3.0], dtype=complex)
    elif name == "8PAM":
        pts = np.arange(-7.0, 8.0, 2.0).astype(complex)
    else:
        raise ValueError(f"unknown modulation format {name!r}")
    return pts / math.sqrt(float(np.mean(np.abs(pts) ** 2)))


def generate_rf_dataset(
    k_classes: int,
    n_per_class: int,
    T: int = 32,
    channel_snr_db: float = math.inf,
    seed: int = 0,
) -> RFDataset:
    """Draw `n_per_class` length-T symbol sequences for each of the first
    `k_classes` catalog formats and push them through a complex AWGN
    channel at `channel_snr_db`. Deterministic per seed.
    """
    if not 2 <= k_classes <= len(MODULATION_CATALOG):
        raise ValueError(f"k_classes must be in 2..{len(MODULATION_CATALOG)}, got {k_classes}")
    if n_per_class < 1 or T < 1:
        raise ValueError("n_per_class and T must be >= 1")
    rng = np.random.default_rng(seed)
    names = MODULATION_CATALOG[:k_classes]
    seqs, labels = [], []
    for label, fmt in enumerate(names):
        pts = modulation_symbols(fmt)
        idx = rng.integers(0, pts.size, size=(n_per_class, T))
        seqs.append(pts[idx])
        labels.append(np.full(n_per_class, label, dtype=np.int64))
    sequences = np.concatenate(seqs)
    if math.isfinite(channel_snr_db):
        sigma = math.sqrt(1.0 / 10.0 ** (channel_snr_db / 10.0) / 2.0)
        noise = rng.normal(0.0, sigma, sequences.shape) + 1j * rng.normal(0.0, sigma, sequences.shape)
        sequences = sequences + noise
    return RFDataset(
        sequences=sequences,
        labels=np.concatenate(labels),
        snr_db=np.full(sequences.shape[0], float(channel_snr_db)),
        class_names=names,
    )


def rf_feature_view(sequences: np.ndarray) -> np.ndarray:
    """Per-sequence moment features for modulation classification.

    Raw symbol sequences are iid draws, so every format shares its first
    and second moments and a dense layer on raw samples carries no class
    signal; the classic discriminators are higher-order moments. Returns
    six complex features per sequence, scaled to O(1):

        m20 = mean(x^2)              m40 = mean(x^4) / 2
        m80 = mean(x^8) / 4          m42 = mean(|x|^2 x^2) / 2
        c42 = mean(|x|^4) - 1        c63 = (mean(|x|^6) - 1) / 4
    """
    x = np.asarray(sequences, dtype=complex)
    if x.ndim != 2:
        raise ValueError(f"expected (N, T) sequences, got {x.shape}")
    p2 = x * x
    p4 = p2 * p2
    mag2 = np.abs(x) ** 2
    feats = np.stack(
        [
            p2.mean(axis=1),
            p4.mean(axis=1) / 2.0,
            (p4 * p4).mean(axis=1) / 4.0,
            (mag2 * p2).mean(axis=1) / 2.0,
            (mag2 * mag2).mean(axis=1) - 1.0,
            ((mag2 * mag2 * mag2).mean(axis=1) - 1.0) / 4.0,
        ],
        axis=1,
    )
    return feats


def write_rf_csv(dataset: RFDataset, path: str | Path) -> None:
    """Serialize as CSV: label, snr_db, then T interleaved re/im pairs."""
    T = dataset.sequences.shape[1]
    header = ["label", "snr_db"]
    for t in range(T):
        header += [f"re{t}", f"im{t}"]
    with Path(path).open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for seq, label, snr in zip(dataset.sequences, dataset.labels, dataset.snr_db):
            row = [int(label), repr(float(snr))]
            for z in seq:
                row += [repr(float(z.real)), repr(float(z.imag))]
            writer.writerow(row)


def read_rf_csv(path: str | Path, class_names: tuple[str, ...] | None = None) -> RFDataset:
    """Inverse of write_rf_csv (exact round-trip)."""
    with Path(path).open("r", newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader)
        if len(header) < 4 or header[:2] != ["label", "snr_db"] or (len(header) - 2) % 2:
            raise ValueError(f"{path}: not an RF dataset CSV (header {header[:4]}...)")
        T = (len(header) - 2) // 2
        labels, snrs, seqs = [], [], []
        for row in reader:
            labels.append(int(row[0]))
            snrs.append(float(row[1]))
            vals = np.array([float(v) for v in row[2:]])
            seqs.append(vals[0::2] + 1j * vals[1::2])
    sequences = np.array(seqs) if seqs else np.zeros((0, T), dtype=complex)
    names = class_names if class_names is not None else MODULATION_CATALOG[: (max(labels) + 1 if labels else 2)]
    return RFDataset(
        sequences=sequences,
        labels=np.array(labels, dtype=np.int64),
        snr_db=np.array(snrs, dtype=float),
        class_names=tuple(names),
    )


# --- synthetic digit glyphs (offline stand-in for the MNIST family) ---------

# Stroke endpoints per digit in unit coordinates (x right, y down).
def _ring(cx: float, cy: float, rx: float, ry: float, n: int = 10) -> list[tuple[float, float, float, float]]:
    ang = 2.0 * np.pi * np.arange(n + 1) / n
    xs = cx + rx * np.cos(ang)
    ys = cy + ry * np.sin(ang)
    return [(xs[i], ys[i], xs[i + 1], ys[i + 1]) for i in range(n)]


def _chain(*pts: tuple[float, float]) -> list[tuple[float, float, float, float]]:
    return [(*pts[i], *pts[i + 1]) for i in range(len(pts) - 1)]


_DIGIT_STROKES: dict[int, list[tuple[float, float, float, float]]] = {
    0: _ring(0.5, 0.5, 0.21, 0.33),
    1: _chain((0.37, 0.3), (0.53, 0.16), (0.53, 0.84)),
    2: _chain((0.32, 0.3), (0.44, 0.18), (0.62, 0.2), (0.68, 0.36), (0.32, 0.82), (0.7, 0.82)),
    3: _chain((0.33, 0.2), (0.6, 0.18), (0.68, 0.33), (0.5, 0.48), (0.68, 0.62), (0.62, 0.8), (0.33, 0.8)),
    4: _chain((0.6, 0.16), (0.3, 0.62), (0.74, 0.62)) + _chain((0.6, 0.16), (0.6, 0.85)),
    5: _chain((0.68, 0.18), (0.35, 0.18), (0.33, 0.47), (0.58, 0.46), (0.68, 0.62), (0.6, 0.8), (0.32, 0.8)),
    6: _chain((0.62, 0.16), (0.42, 0.36), (0.33, 0.62)) + _ring(0.48, 0.67, 0.155, 0.155, 8),
    7: _chain((0.3, 0.18), (0.7, 0.18), (0.44, 0.84)),
    8: _ring(0.5, 0.33, 0.16, 0.15, 8) + _ring(0.5, 0.67, 0.19, 0.17, 8),
    9: _ring(0.52, 0.34, 0.16, 0.16, 8) + _chain((0.68, 0.36), (0.62, 0.6), (0.52, 0.84)),
}


def _render_glyphs(digits: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Rasterize jittered digit glyphs to (N, 28, 28) uint8."""
    n = digits.shape[0]
    yy, xx = np.mgrid[0:28, 0:28]
    px = (xx.ravel() + 0.5) / 28.0
    py = (yy.ravel() + 0.5) / 28.0
    out = np.zeros((n, 784))
    angles = rng.uniform(-0.42, 0.42, n)
    scales = rng.uniform(0.75, 1.12, n)
    shears = rng.uniform(-0.18, 0.18, n)
    dxs = rng.uniform(-0.07, 0.07, n)
    dys = rng.uniform(-0.07, 0.07, n)
    widths = rng.uniform(0.035, 0.055, n)
    for i in range(n):
        segs = np.array(_DIGIT_STROKES[int(digits[i])])
        pts = segs.reshape(-1, 2) - 0.5
        ca, sa = np.cos(angles[i]), np.sin(angles[i])
        rot = np.array([[ca, -sa], [sa, ca]])
        shear = np.array([[1.0, shears[i]], [0.0, 1.0]])
        pts = pts @ (rot @ shear).T * scales[i]
        pts = pts + 0.5 + np.array([dxs[i], dys[i]])
        a = pts[0::2]
        b = pts[1::2]
        ab = b - a
        denom = np.maximum((ab**2).sum(axis=1), 1e-12)
        # Distance from every pixel to every stroke segment.
        ap_x = px[:, None] - a[None, :, 0]
        ap_y = py[:, None] - a[None, :, 1]
        t = np.clip((ap_x * ab[None, :, 0] + ap_y * ab[None, :, 1]) / denom, 0.0, 1.0)
        dx = ap_x - t * ab[None, :, 0]
        dy = ap_y - t * ab[None, :, 1]
        d = np.sqrt(dx**2 + dy**2).min(axis=1)
        soft = 0.025
        out[i] = np.clip((widths[i] + soft - d) / soft, 0.0, 1.0)
    out = out * rng.uniform(0.75, 1.0, (n, 1)) * 255.0
    out += rng.normal(0.0, 14.0, out.shape)
    return np.clip(np.floor(out + 0.5), 0, 255).astype(np.uint8).reshape(n, 28, 28)


def make_synthetic_digits(n_train: int, n_test: int, seed: int = 0) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Seeded synthetic 28x28 digit dataset in raw (pre-IDX) form.

    Returns (train_images, train_labels, test_images, test_labels); images
    are uint8 (N, 28, 28) suitable for write_idx_images and load_idx.
    """
    rng = np.random.default_rng(seed)
    train_labels = rng.integers(0, 10, n_train)
    test_labels = rng.integers(0, 10, n_test)
    train_images = _render_glyphs(train_labels, rng)
    test_images = _render_glyphs(test_labels, rng)
    return train_images, train_labels.astype(np.int64), test_images, test_labels.astype(np.int64)

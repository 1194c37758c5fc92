"""Complex- and real-valued quantized feedforward networks.

A network is a stack of dense layers evaluated as inner products against
conjugated inputs (the native operation of the I/Q engine), with split
ReLU between layers and modulus logits at the readout for the complex
variant. The real-valued baseline uses ordinary dot products, plain ReLU,
and linear logits.

Quantization-aware evaluation snaps weights, biases, and layer inputs to
the configured constellation on the fly; parameters themselves stay full
precision. Post-training quantization instead folds per-dimension input
affine transforms and per-neuron weight scales around a frozen
full-precision model so every value entering the analog engine lies on
the [-1, 1] modulator grid.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import photonics
from .constellation import (
    Constellation1D,
    ConstellationQAM,
    quantize_1d,
    quantize_complex,
)
from .photonics import NoiseModel

__all__ = [
    "QuantConfig",
    "NetworkSpec",
    "NetworkState",
    "PTQLayer",
    "PTQNetwork",
    "init_state",
    "embed",
    "prepare_inputs",
    "split_relu",
    "network_forward",
    "ptq_calibrate",
    "ptq_forward",
    "value_count",
    "embedding_value_count",
    "save_checkpoint",
    "load_checkpoint",
    "CHECKPOINT_FORMAT",
    "CHECKPOINT_VERSION",
]

CHECKPOINT_FORMAT = "qamnet-checkpoint"
CHECKPOINT_VERSION = 1


@dataclass(frozen=True)
class QuantConfig:
    """Constellation selection: none (full precision), qam, or levels (1D)."""

    kind: str = "none"
    n_total: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("none", "qam", "levels"):
            raise ValueError(f"quant kind must be none|qam|levels, got {self.kind!r}")
        if self.kind == "qam":
            side = math.isqrt(self.n_total)
            if side * side != self.n_total or side < 2:
                raise ValueError(f"qam needs a square total >= 4, got {self.n_total}")
        elif self.kind == "levels" and self.n_total < 2:
            raise ValueError(f"levels quantization needs n_total >= 2, got {self.n_total}")

    def constellation(self) -> ConstellationQAM | Constellation1D | None:
        if self.kind == "qam":
            return ConstellationQAM(side=math.isqrt(self.n_total))
        if self.kind == "levels":
            return Constellation1D(levels=self.n_total)
        return None

    def bits_per_value(self) -> float | None:
        """Bits represented by one real value, or None at full precision."""
        if self.kind == "none":
            return None
        bits = math.log2(self.n_total)
        return bits / 2.0 if self.kind == "qam" else bits


@dataclass(frozen=True)
class NetworkSpec:
    """Architecture plus quantization mode.

    input_mode "embed" feeds integer token ids through a trained complex
    embedding table (one complex value per token); "direct" feeds the
    input vector as-is, scaled by input_scale before any quantization.
    """

    layer_sizes: tuple[int, ...]
    complex_valued: bool = True
    input_mode: str = "direct"
    vocab_size: int = 256
    input_scale: float = 1.0
    quant: QuantConfig = field(default_factory=QuantConfig)

    def __post_init__(self) -> None:
        if len(self.layer_sizes) < 2 or any(s < 1 for s in self.layer_sizes):
            raise ValueError(f"layer_sizes needs >= 2 positive entries, got {self.layer_sizes}")
        if self.input_mode not in ("embed", "direct"):
            raise ValueError(f"input_mode must be embed|direct, got {self.input_mode!r}")
        if self.input_mode == "embed" and not self.complex_valued:
            raise ValueError("embedding inputs require a complex-valued network")
        if self.quant.kind == "qam" and not self.complex_valued:
            raise ValueError("qam quantization requires a complex-valued network")
        if self.quant.kind == "levels" and self.complex_valued:
            raise ValueError("1D level quantization requires a real-valued network")

    @property
    def n_classes(self) -> int:
        return self.layer_sizes[-1]


@dataclass
class NetworkState:
    """Full-precision parameters for a NetworkSpec."""

    spec: NetworkSpec
    weights: list[np.ndarray]
    biases: list[np.ndarray]
    embedding: np.ndarray | None = None

    def __post_init__(self) -> None:
        sizes = self.spec.layer_sizes
        if len(self.weights) != len(sizes) - 1 or len(self.biases) != len(sizes) - 1:
            raise ValueError("one weight matrix and bias vector per layer required")
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            if w.shape != (sizes[i + 1], sizes[i]) or b.shape != (sizes[i + 1],):
                raise ValueError(f"layer {i} shapes {w.shape}/{b.shape} do not match {sizes}")
        if self.spec.input_mode == "embed":
            if self.embedding is None or self.embedding.shape != (self.spec.vocab_size,):
                raise ValueError("embed mode requires a (vocab_size,) embedding table")


def value_count(spec: NetworkSpec) -> int:
    """Real values held by the dense layers: sum of (in*out + out) per
    layer, doubled for complex parameters. Embedding tables are counted
    separately (embedding_value_count)."""
    total = sum(i * o + o for i, o in zip(spec.layer_sizes, spec.layer_sizes[1:]))
    return 2 * total if spec.complex_valued else total


def embedding_value_count(spec: NetworkSpec) -> int:
    return 2 * spec.vocab_size if spec.input_mode == "embed" else 0


def init_state(spec: NetworkSpec, seed: int = 0) -> NetworkState:
    """Seeded uniform init: per-axis bound min(1, sqrt(6/(fan_in+fan_out)))
    for weights, +-0.5 for the embedding, zero biases. Draw order is fixed
    (embedding first, then layers) so states are reproducible per seed.
    """
    rng = np.random.default_rng(seed)
    embedding = None
    if spec.input_mode == "embed":
        pair = rng.uniform(-0.5, 0.5, size=(spec.vocab_size, 2))
        embedding = pair[:, 0] + 1j * pair[:, 1]
    weights, biases = [], []
    for fan_in, fan_out in zip(spec.layer_sizes, spec.layer_sizes[1:]):
        bound = min(1.0, math.sqrt(6.0 / (fan_in + fan_out)))
        if spec.complex_valued:
            pair = rng.uniform(-bound, bound, size=(fan_out, fan_in, 2))
            weights.append(pair[..., 0] + 1j * pair[..., 1])
            biases.append(np.zeros(fan_out, dtype=complex))
        else:
            weights.append(rng.uniform(-bound, bound, size=(fan_out, fan_in)))
            biases.append(np.zeros(fan_out))
    return NetworkState(spec, weights, biases, embedding)


def embed(state: NetworkState, token_ids: np.ndarray) -> np.ndarray:
    """Token ids -> complex inputs via the trained embedding table."""
    if state.embedding is None:
        raise ValueError("network has no embedding table")
    ids = np.asarray(token_ids)
    if ids.size and (ids.min() < 0 or ids.max() >= state.spec.vocab_size):
        raise ValueError(f"token id out of range 0..{state.spec.vocab_size - 1}")
    return state.embedding[ids]


def prepare_inputs(state: NetworkState, raw: np.ndarray) -> np.ndarray:
    """Raw dataset rows -> model-domain input vectors (2D batch)."""
    raw = np.asarray(raw)
    if state.spec.input_mode == "embed":
        x = embed(state, raw)
    else:
        dtype = complex if state.spec.complex_valued else float
        x = raw.astype(dtype) * state.spec.input_scale
    return x[None, :] if x.ndim == 1 else x


def split_relu(z: np.ndarray) -> np.ndarray:
    """ReLU applied per axis: relu(re) + i relu(im); plain ReLU on reals."""
    if np.iscomplexobj(z):
        return np.maximum(z.real, 0.0) + 1j * np.maximum(z.imag, 0.0)
    return np.maximum(z, 0.0)


def _quantize_model(v: np.ndarray, c) -> np.ndarray:
    if c is None:
        return v
    if isinstance(c, ConstellationQAM):
        return quantize_complex(v, c)
    return quantize_1d(v, c)


def _batch_noise(pre: np.ndarray, noise: NoiseModel | None, rng: np.random.Generator | None) -> np.ndarray:
    """Per-sample readout noise on a (N, h) pre-activation batch.

    Each row is one matrix-vector readout (complex rows are viewed as the
    interleaved 2h real accumulator values); sigma_signal is that row's
    population std. One row-major standard-normal draw keeps the stream
    deterministic for a given generator state.
    """
    if noise is None or noise.is_off or rng is None:
        return pre
    flat = pre.view(float) if np.iscomplexobj(pre) else pre
    sigma = flat.std(axis=1, keepdims=True) / math.sqrt(noise.snr_linear)
    noisy = flat + rng.standard_normal(flat.shape) * sigma
    return noisy.view(complex) if np.iscomplexobj(pre) else noisy


def _layer_digital(W: np.ndarray, b: np.ndarray, xq: np.ndarray) -> np.ndarray:
    if np.iscomplexobj(W):
        return np.conj(xq) @ W.T + b
    return xq @ W.T + b


def _layer_simulated(Wq: np.ndarray, bq: np.ndarray, xq: np.ndarray) -> np.ndarray:
    """Photonic evaluation of one batch: bias rides the accumulator as an
    extra timestep against a constant-1 input."""
    aug_w = np.concatenate([Wq, bq[:, None]], axis=1)
    out = np.empty((xq.shape[0], Wq.shape[0]), dtype=Wq.dtype)
    if np.iscomplexobj(Wq):
        for i, row in enumerate(xq):
            out[i] = photonics.iq_matvec(aug_w, np.append(row, 1.0 + 0.0j))
    else:
        for i, row in enumerate(xq):
            out[i] = photonics.amplitude_matvec(aug_w, np.append(row, 1.0))
    return out


def network_forward(
    state: NetworkState,
    raw_inputs: np.ndarray,
    backend: str = "digital",
    noise: NoiseModel | None = None,
    rng: np.random.Generator | None = None,
    collect: bool = False,
):
    """Evaluate the network on a batch of raw dataset rows.

    Quantization follows spec.quant: weights, biases, and layer inputs are
    snapped to the constellation before each layer. Readout noise (when a
    NoiseModel is active) perturbs each layer's pre-activations per
    sample. Returns (N, n_classes) logits; with collect=True also returns
    the list of model-domain layer inputs (pre-quantization), which is
    what PTQ calibration consumes.
    """
    if backend not in ("digital", "simulated"):
        raise ValueError(f"backend must be digital|simulated, got {backend!r}")
    if noise is not None and not noise.is_off and rng is None:
        rng = noise.make_rng()
    c = state.spec.quant.constellation()
    x = prepare_inputs(state, raw_inputs)
    taps: list[np.ndarray] = []
    n_layers = len(state.weights)
    for li, (W, b) in enumerate(zip(state.weights, state.biases)):
        if collect:
            taps.append(x.copy())
        xq = _quantize_model(x, c)
        Wq = _quantize_model(W, c)
        bq = _quantize_model(b, c)
        if backend == "digital":
            pre = _layer_digital(Wq, bq, xq)
        else:
            pre = _layer_simulated(Wq, bq, xq)
        pre = _batch_noise(pre, noise, rng)
        x = split_relu(pre) if li < n_layers - 1 else pre
    logits = np.abs(x) if state.spec.complex_valued else x
    return (logits, taps) if collect else logits


# --- post-training quantization ----------------------------------------------


@dataclass(frozen=True)
class PTQLayer:
    """One layer's folded affine transforms and quantized weights.

    The analog engine sees x' = (x - input_zero_point) * input_scale and
    the augmented row [W / input_scale | folded constant] * row_scale,
    all on the constellation grid; dividing the readout by row_scale
    recovers the pre-activation. The folded constant absorbs the bias and
    the zero-point correction and multiplies a constant-1 input.
    """

    input_zero_point: np.ndarray  # (n,) complex or float
    input_scale: np.ndarray  # (n,) float multipliers into [-1, 1]
    weights_q: np.ndarray  # (h, n+1) on-grid augmented weights
    row_scale: np.ndarray  # (h,) float multipliers into [-1, 1]


@dataclass(frozen=True)
class PTQNetwork:
    spec: NetworkSpec
    quant: QuantConfig
    layers: list[PTQLayer]


_SCALE_FLOOR = 1e-8


def _affine_params(calib: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-dimension zero point and multiplier from calibration extrema.

    Complex dims center each axis on its own midpoint and share one
    multiplier sized to the wider axis, so both land in [-1, 1].
    """
    if np.iscomplexobj(calib):
        lo_r, hi_r = calib.real.min(axis=0), calib.real.max(axis=0)
        lo_i, hi_i = calib.imag.min(axis=0), calib.imag.max(axis=0)
        zp = (lo_r + hi_r) / 2.0 + 1j * (lo_i + hi_i) / 2.0
        half = np.maximum(hi_r - lo_r, hi_i - lo_i) / 2.0
    else:
        lo, hi = calib.min(axis=0), calib.max(axis=0)
        zp = (lo + hi) / 2.0
        half = (hi - lo) / 2.0
    return zp, 1.0 / np.maximum(half, _SCALE_FLOOR)


def ptq_calibrate(state: NetworkState, calib_raw: np.ndarray, quant: QuantConfig) -> PTQNetwork:
    """Fold a frozen full-precision model onto a constellation.

    Runs the calibration rows through the full-precision digital forward
    to observe every layer's input range, then per layer: per-dimension
    input affine, bias and zero-point correction folded into an extra
    weight column, per-neuron symmetric row scale, and grid quantization
    of the scaled augmented weights.
    """
    if quant.kind == "none":
        raise ValueError("ptq_calibrate needs a qam or levels QuantConfig")
    c = quant.constellation()
    _, taps = network_forward(state, calib_raw, collect=True)
    layers = []
    for W, b, calib in zip(state.weights, state.biases, taps):
        zp, s_in = _affine_params(calib)
        folded = W @ np.conj(zp) + b
        aug = np.concatenate([W / s_in[None, :], folded[:, None]], axis=1)
        mags = np.abs(aug.view(float)) if np.iscomplexobj(aug) else np.abs(aug)
        s_row = 1.0 / np.maximum(mags.reshape(aug.shape[0], -1).max(axis=1), _SCALE_FLOOR)
        weights_q = _quantize_model(aug * s_row[:, None], c)
        layers.append(PTQLayer(zp, s_in, weights_q, s_row))
    return PTQNetwork(state.spec, quant, layers)


def ptq_forward(
    ptq: PTQNetwork,
    raw_inputs: np.ndarray,
    backend: str = "digital",
    noise: NoiseModel | None = None,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """Evaluate a PTQ-folded network; returns (N, n_classes) logits.

    Readout noise acts on the scaled accumulator values, i.e. before the
    per-neuron rescale back to pre-activation units.
    """
    if backend not in ("digital", "simulated"):
        raise ValueError(f"backend must be digital|simulated, got {backend!r}")
    if noise is not None and not noise.is_off and rng is None:
        rng = noise.make_rng()
    c = ptq.quant.constellation()
    spec = ptq.spec
    x = _ptq_prepare(ptq, raw_inputs)
    n_layers = len(ptq.layers)
    for li, layer in enumerate(ptq.layers):
        scaled = (x - layer.input_zero_point[None, :]) * layer.input_scale[None, :]
        one = np.ones((x.shape[0], 1), dtype=scaled.dtype)
        xq = _quantize_model(np.concatenate([scaled, one], axis=1), c)
        if backend == "digital":
            zero_b = np.zeros(layer.weights_q.shape[0], dtype=layer.weights_q.dtype)
            pre_scaled = _layer_digital(layer.weights_q, zero_b, xq)
        else:
            pre_scaled = _ptq_simulated(layer.weights_q, xq)
        pre_scaled = _batch_noise(pre_scaled, noise, rng)
        pre = pre_scaled / layer.row_scale[None, :]
        x = split_relu(pre) if li < n_layers - 1 else pre
    return np.abs(x) if spec.complex_valued else x


def _ptq_simulated(weights_q: np.ndarray, xq: np.ndarray) -> np.ndarray:
    out = np.empty((xq.shape[0], weights_q.shape[0]), dtype=weights_q.dtype)
    for i, row in enumerate(xq):
        if np.iscomplexobj(weights_q):
            out[i] = photonics.iq_matvec(weights_q, row)
        else:
            out[i] = photonics.amplitude_matvec(weights_q, row)
    return out


def _ptq_prepare(ptq: PTQNetwork, raw: np.ndarray) -> np.ndarray:
    raw = np.asarray(raw)
    if ptq.spec.input_mode == "embed":
        table = getattr(ptq, "_embedding", None)
        if table is None:
            raise ValueError("embed-mode PTQ inference requires bind_embedding()")
        x = table[raw]
    else:
        dtype = complex if ptq.spec.complex_valued else float
        x = raw.astype(dtype) * ptq.spec.input_scale
    return x[None, :] if x.ndim == 1 else x


def bind_embedding(ptq: PTQNetwork, state: NetworkState) -> PTQNetwork:
    """Attach the calibrated model's embedding table for embed-mode PTQ."""
    object.__setattr__(ptq, "_embedding", None if state.embedding is None else state.embedding.copy())
    return ptq


# --- checkpoints --------------------------------------------------------------


def _to_list(a: np.ndarray) -> list:
    if np.iscomplexobj(a):
        return np.stack([a.real, a.imag], axis=-1).ravel().tolist()
    return np.asarray(a, dtype=float).ravel().tolist()


def _from_list(flat: list, shape: tuple[int, ...], is_complex: bool) -> np.ndarray:
    if is_complex:
        arr = np.asarray(flat, dtype=float).reshape(*shape, 2)
        return arr[..., 0] + 1j * arr[..., 1]
    return np.asarray(flat, dtype=float).reshape(shape)


def save_checkpoint(state: NetworkState, path: str | Path) -> None:
    """Write a versioned JSON checkpoint (floats round-trip exactly)."""
    spec = state.spec
    doc = {
        "format": CHECKPOINT_FORMAT,
        "version": CHECKPOINT_VERSION,
        "spec": {
            "layer_sizes": list(spec.layer_sizes),
            "complex_valued": spec.complex_valued,
            "input_mode": spec.input_mode,
            "vocab_size": spec.vocab_size,
            "input_scale": spec.input_scale,
            "quant": {"kind": spec.quant.kind, "n_total": spec.quant.n_total},
        },
        "embedding": None if state.embedding is None else _to_list(state.embedding),
        "weights": [_to_list(w) for w in state.weights],
        "biases": [_to_list(b) for b in state.biases],
    }
    with Path(path).open("w", encoding="utf-8") as f:
        json.dump(doc, f)
        f.write("\n")


def load_checkpoint(path: str | Path) -> NetworkState:
    """Read a checkpoint written by save_checkpoint; validates format and
    version and rejects anything newer than this library understands."""
    with Path(path).open("r", encoding="utf-8") as f:
        doc = json.load(f)
    if doc.get("format") != CHECKPOINT_FORMAT:
        raise ValueError(f"{path}: not a {CHECKPOINT_FORMAT} file")
    if doc.get("version") != CHECKPOINT_VERSION:
        raise ValueError(f"{path}: unsupported checkpoint version {doc.get('version')!r}")
    s = doc["spec"]
    spec = NetworkSpec(
        layer_sizes=tuple(s["layer_sizes"]),
        complex_valued=s["complex_valued"],
        input_mode=s["input_mode"],
        vocab_size=s["vocab_size"],
        input_scale=s["input_scale"],
        quant=QuantConfig(**s["quant"]),
    )
    cx = spec.complex_valued
    sizes = spec.layer_sizes
    weights = [
        _from_list(flat, (sizes[i + 1], sizes[i]), cx) for i, flat in enumerate(doc["weights"])
    ]
    biases = [_from_list(flat, (sizes[i + 1],), cx) for i, flat in enumerate(doc["biases"])]
    embedding = None
    if doc["embedding"] is not None:
        embedding = _from_list(doc["embedding"], (spec.vocab_size,), True)
    return NetworkState(spec, weights, biases, embedding)

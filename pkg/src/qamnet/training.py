"""Quantization-aware training with straight-through estimators.

The forward pass is the same quantized evaluation as network_forward
(weights, biases, and layer inputs snapped to the constellation); the
backward pass treats each quantizer as identity inside [-1, 1] and zero
outside, applied per axis for complex values. Parameters stay full
precision and are updated with Adam; embedding rows get lazy updates
(only rows appearing in a batch advance their moments).

Gradient conventions for one complex layer z = W . conj(x_q) + b, with
G = dL/d(Re z) + i dL/d(Im z):

    dL/dW = outer(G, x_q)        (x_q unconjugated)
    dL/dx = W^T . conj(G)
    dL/db = G

and the modulus readout l = |z| backpropagates G = g * z / l (zero where
l = 0).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .constellation import ste_gradient
from .network import (
    NetworkState,
    NoiseModel,
    _batch_noise,
    _layer_digital,
    _quantize_model,
    prepare_inputs,
    network_forward,
    split_relu,
)

__all__ = [
    "TrainConfig",
    "EpochRecord",
    "TrainHistory",
    "softmax_cross_entropy",
    "qat_forward_backward",
    "train",
    "evaluate",
    "write_history_csv",
    "HISTORY_COLUMNS",
]

HISTORY_COLUMNS = ["epoch", "train_loss", "train_accuracy", "eval_accuracy"]


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 30
    batch_size: int = 128
    learning_rate: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    seed: int = 0
    snr_db: float = math.inf  # readout noise injected during training
    shuffle: bool = True


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    train_loss: float
    train_accuracy: float
    eval_accuracy: float  # nan when no eval split was given


@dataclass
class TrainHistory:
    records: list[EpochRecord] = field(default_factory=list)

    @property
    def final_eval_accuracy(self) -> float:
        return self.records[-1].eval_accuracy if self.records else math.nan

    @property
    def final_train_accuracy(self) -> float:
        return self.records[-1].train_accuracy if self.records else math.nan


def softmax_cross_entropy(logits: np.ndarray, labels: np.ndarray):
    """Mean cross-entropy; returns (loss, dL/dlogits, n_correct)."""
    n = logits.shape[0]
    shifted = logits - logits.max(axis=1, keepdims=True)
    expv = np.exp(shifted)
    p = expv / expv.sum(axis=1, keepdims=True)
    idx = np.arange(n)
    loss = float(-np.log(np.maximum(p[idx, labels], 1e-300)).mean())
    dlogits = p.copy()
    dlogits[idx, labels] -= 1.0
    dlogits /= n
    n_correct = int((logits.argmax(axis=1) == labels).sum())
    return loss, dlogits, n_correct


def _apply_ste(grad: np.ndarray, param: np.ndarray) -> np.ndarray:
    """Per-axis straight-through mask evaluated at the full-precision value."""
    m = ste_gradient(param)
    if np.iscomplexobj(param):
        return grad.real * m.real + 1j * (grad.imag * m.imag)
    return grad * m


def qat_forward_backward(
    state: NetworkState,
    raw: np.ndarray,
    labels: np.ndarray,
    noise: NoiseModel | None = None,
    rng: np.random.Generator | None = None,
):
    """One quantized forward/backward over a batch.

    Returns (loss, grads, n_correct) with grads holding per-layer weight
    and bias gradients plus (for embed mode) the dense embedding gradient
    and the set of rows it touches.
    """
    spec = state.spec
    c = spec.quant.constellation()
    complex_net = spec.complex_valued
    x = prepare_inputs(state, raw)
    n_layers = len(state.weights)
    xs, xqs, wqs, pres = [], [], [], []
    for li, (W, b) in enumerate(zip(state.weights, state.biases)):
        xq = _quantize_model(x, c)
        Wq = _quantize_model(W, c)
        bq = _quantize_model(b, c)
        pre = _layer_digital(Wq, bq, xq)
        pre = _batch_noise(pre, noise, rng)
        xs.append(x)
        xqs.append(xq)
        wqs.append(Wq)
        pres.append(pre)
        x = split_relu(pre) if li < n_layers - 1 else pre
    z = x
    logits = np.abs(z) if complex_net else z
    loss, dlogits, n_correct = softmax_cross_entropy(logits, np.asarray(labels))

    if complex_net:
        safe = np.where(logits > 0.0, logits, 1.0)
        G = np.where(logits > 0.0, dlogits / safe, 0.0) * z
    else:
        G = dlogits
    grads_w: list[np.ndarray] = [np.empty(0)] * n_layers
    grads_b: list[np.ndarray] = [np.empty(0)] * n_layers
    g_input = None
    quantized = c is not None  # no quantizers in the graph -> no STE masks
    for li in reversed(range(n_layers)):
        gW = G.T @ xqs[li]
        gb = G.sum(axis=0)
        grads_w[li] = _apply_ste(gW, state.weights[li]) if quantized else gW
        grads_b[li] = _apply_ste(gb, state.biases[li]) if quantized else gb
        gx = np.conj(G) @ wqs[li] if complex_net else G @ wqs[li]
        if quantized:
            gx = _apply_ste(gx, xs[li])
        if li > 0:
            prev = pres[li - 1]
            if complex_net:
                G = gx.real * (prev.real > 0.0) + 1j * (gx.imag * (prev.imag > 0.0))
            else:
                G = gx * (prev > 0.0)
        else:
            g_input = gx

    grads = {"weights": grads_w, "biases": grads_b, "embedding": None, "embed_rows": None}
    if spec.input_mode == "embed":
        ids = np.asarray(raw)
        g_emb = np.zeros(spec.vocab_size, dtype=complex)
        np.add.at(g_emb, ids.ravel(), g_input.ravel())
        grads["embedding"] = g_emb
        grads["embed_rows"] = np.unique(ids)
    return loss, grads, n_correct


class _AdamSlot:
    """Adam moments for one parameter array (complex handled per axis).

    Holds a float view aliasing the parameter storage; lazy-row slots
    reshape it to (rows, axes) so row indexing matches parameter rows.
    """

    def __init__(self, param: np.ndarray, lazy_rows: bool = False):
        view = param.view(float) if np.iscomplexobj(param) else param
        if lazy_rows:
            view = view.reshape(param.shape[0], -1)
        self.view = view
        self.m = np.zeros_like(view)
        self.v = np.zeros_like(view)
        self.lazy_rows = lazy_rows
        self.t = np.zeros(param.shape[0], dtype=np.int64) if lazy_rows else 0

    def step(self, grad: np.ndarray, cfg: TrainConfig, rows=None) -> None:
        gv = grad.view(float) if np.iscomplexobj(grad) else grad
        gv = gv.reshape(self.view.shape)
        if self.lazy_rows:
            self.t[rows] += 1
            t = self.t[rows].astype(float)[:, None]
            sel = rows
        else:
            self.t += 1
            t = float(self.t)
            sel = slice(None)
        g = gv[sel]
        self.m[sel] = cfg.beta1 * self.m[sel] + (1.0 - cfg.beta1) * g
        self.v[sel] = cfg.beta2 * self.v[sel] + (1.0 - cfg.beta2) * g * g
        m_hat = self.m[sel] / (1.0 - cfg.beta1**t)
        v_hat = self.v[sel] / (1.0 - cfg.beta2**t)
        self.view[sel] -= cfg.learning_rate * m_hat / (np.sqrt(v_hat) + cfg.eps)


def evaluate(
    state: NetworkState,
    raw: np.ndarray,
    labels: np.ndarray,
    backend: str = "digital",
    noise: NoiseModel | None = None,
    rng: np.random.Generator | None = None,
    batch_size: int = 512,
) -> float:
    """Classification accuracy under the state's quantization mode."""
    labels = np.asarray(labels)
    correct = 0
    for start in range(0, len(labels), batch_size):
        stop = start + batch_size
        logits = network_forward(state, raw[start:stop], backend=backend, noise=noise, rng=rng)
        correct += int((logits.argmax(axis=1) == labels[start:stop]).sum())
    return correct / len(labels)


def train(
    state: NetworkState,
    train_raw: np.ndarray,
    train_labels: np.ndarray,
    config: TrainConfig,
    eval_raw: np.ndarray | None = None,
    eval_labels: np.ndarray | None = None,
) -> TrainHistory:
    """Adam-train `state` in place; returns the per-epoch history.

    One generator seeded from config.seed drives both the epoch shuffles
    and any injected readout noise, so runs are reproducible end to end.
    """
    rng = np.random.default_rng(config.seed)
    noise = None if math.isinf(config.snr_db) else NoiseModel(snr_db=config.snr_db)
    labels = np.asarray(train_labels)
    n = len(labels)
    slots = {
        "weights": [_AdamSlot(w) for w in state.weights],
        "biases": [_AdamSlot(b) for b in state.biases],
    }
    if state.embedding is not None:
        slots["embedding"] = _AdamSlot(state.embedding, lazy_rows=True)
    history = TrainHistory()
    for epoch in range(1, config.epochs + 1):
        order = rng.permutation(n) if config.shuffle else np.arange(n)
        total_loss = 0.0
        total_correct = 0
        for start in range(0, n, config.batch_size):
            idx = order[start : start + config.batch_size]
            loss, grads, n_correct = qat_forward_backward(
                state, train_raw[idx], labels[idx], noise=noise, rng=rng
            )
            total_loss += loss * len(idx)
            total_correct += n_correct
            for slot, g in zip(slots["weights"], grads["weights"]):
                slot.step(g, config)
            for slot, g in zip(slots["biases"], grads["biases"]):
                slot.step(g, config)
            if grads["embedding"] is not None:
                slots["embedding"].step(grads["embedding"], config, rows=grads["embed_rows"])
        eval_acc = math.nan
        if eval_raw is not None and eval_labels is not None:
            eval_acc = evaluate(state, eval_raw, eval_labels)
        history.records.append(
            EpochRecord(epoch, total_loss / n, total_correct / n, eval_acc)
        )
    return history


def write_history_csv(history: TrainHistory, path: str | Path) -> None:
    """Training history as CSV; floats use repr so they round-trip."""
    with Path(path).open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(HISTORY_COLUMNS)
        for r in history.records:
            writer.writerow(
                [r.epoch, repr(r.train_loss), repr(r.train_accuracy), repr(r.eval_accuracy)]
            )

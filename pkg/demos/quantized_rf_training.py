"""
Training through the constellation: QAT and PTQ on the RF task
==============================================================

Generates the synthetic modulation-classification dataset, trains a
full-precision complex network, folds it post-training onto QAM grids of
different sizes, and shows how readout noise eats the accuracy back.
Runs in well under a minute.
"""

import math

import numpy as np

from qamnet import NetworkSpec, NoiseModel, QuantConfig, generate_rf_dataset, init_state
from qamnet.datasets import rf_feature_view
from qamnet.network import bind_embedding, ptq_calibrate, ptq_forward
from qamnet.training import TrainConfig, evaluate, train

# Four formats, 32 symbols per example, a 20 dB channel. The network eats
# per-sequence moment features (raw iid symbol streams carry no linear
# class signal; their higher-order moments do).
train_set = generate_rf_dataset(4, 500, T=32, channel_snr_db=20, seed=7)
test_set = generate_rf_dataset(4, 250, T=32, channel_snr_db=20, seed=8)
X_train = rf_feature_view(train_set.sequences)
X_test = rf_feature_view(test_set.sequences)
print("classes:", train_set.class_names)

# A small complex network in full precision first.
spec = NetworkSpec((X_train.shape[1], 16, 4), complex_valued=True, input_mode="direct", input_scale=0.5)
state = init_state(spec, seed=0)
train(state, X_train, train_set.labels, TrainConfig(epochs=30, seed=0))
fp_acc = evaluate(state, X_test, test_set.labels)
print(f"full precision accuracy: {fp_acc:.3f}")

# Quantization-aware retraining directly on a 64-QAM grid for comparison.
qat_spec = NetworkSpec(
    (X_train.shape[1], 16, 4),
    complex_valued=True,
    input_mode="direct",
    input_scale=0.5,
    quant=QuantConfig("qam", 64),
)
qat_state = init_state(qat_spec, seed=0)
train(qat_state, X_train, train_set.labels, TrainConfig(epochs=30, seed=0))
print(f"QAT on 64-QAM:           {evaluate(qat_state, X_test, test_set.labels):.3f}")

# Post-training quantization: fold the frozen full-precision model onto a
# grid, then sweep the readout SNR. Calibration must see every class, so
# stride across the (class-blocked) training set.
calib = X_train[np.linspace(0, len(X_train) - 1, 512).astype(int)]
print("\nPTQ accuracy vs readout SNR (rows: QAM side)")
snrs = [math.inf, 30.0, 20.0, 10.0, 0.0]
print("         " + "  ".join(f"{s:>6}" for s in snrs))
for side in (8, 32, 1024):
    ptq = bind_embedding(ptq_calibrate(state, calib, QuantConfig("qam", side * side)), state)
    row = []
    for k, snr in enumerate(snrs):
        noise = None if math.isinf(snr) else NoiseModel(snr_db=snr)
        rng = np.random.default_rng([1, side, k])
        logits = ptq_forward(ptq, X_test, noise=noise, rng=rng)
        row.append(float((logits.argmax(axis=1) == test_set.labels).mean()))
    print(f"side {side:4d} " + "  ".join(f"{a:6.3f}" for a in row))

"""
What does a fair 1D baseline even mean?
=======================================

A QAM constellation with N symbols uses two modulators at sqrt(N) levels
each. A single-axis system can match it on bits (N levels), on hardware
precision (sqrt(N) levels), or on modulation energy (~sqrt(2N) levels) --
and those three baselines behave very differently. This demo prints the
equivalence table and retrains each variant on the digit-glyph task.
"""

from qamnet import QuantConfig, Variant, client_activation_energy, equivalence_table
from qamnet.datasets import make_synthetic_digits
from qamnet.harness import ExperimentConfig, _train_model, _variant_quant, build_task, qam_spec, real_spec

# The trade-off table for a 49 -> 16 -> 10 network.
print(f"{'variant':14s} {'N':>6} {'bits':>6} {'values':>7} {'energy':>8}")
for n_total in (16, 64, 256):
    for row in equivalence_table(n_total, w=7, h=16, c=10):
        print(
            f"{row.variant.value:14s} {row.total_levels:6d} {row.bits_per_value:6.2f} "
            f"{row.weight_values:7d} {row.energy_per_value:8.2f}"
        )
    print()

# Per-inference client energy: everything the client modulates (input and
# hidden activations), at the variant's per-value budget.
for variant, n in ((Variant.QAMNET, 16), (Variant.LEVEL_EQ_1D, 16)):
    e = client_activation_energy([49, 16, 10], n, variant)
    print(f"client activation energy, {variant.value:10s} N={n}: {e}")

# Now accuracy. Train each variant on the synthetic digit glyphs; the QAM
# network keeps its advantage at equal hardware precision because its two
# axes compound into N effective states per weight.
cfg = ExperimentConfig(
    experiment="demo",
    dataset={"kind": "synthetic_digits", "n_train": 8000, "n_test": 2000, "seed": 3},
)
task = build_task(cfg.dataset)
_, fp_cx = _train_model(task, qam_spec(task, 16, QuantConfig()), cfg, 0)
_, fp_re = _train_model(task, real_spec(task, 16, QuantConfig()), cfg, 0)
print(f"\nfull-precision floors: complex {fp_cx:.3f}, real {fp_re:.3f}")
print(f"{'variant':14s}" + "".join(f"  N={n:<4d}" for n in (16, 64, 256)))
for variant in ("QAMNet", "LevelEq1D", "HardwareEq1D", "EnergyEq1D"):
    accs = []
    for n_total in (16, 64, 256):
        quant, _, complex_net = _variant_quant(variant, n_total)
        spec = (qam_spec if complex_net else real_spec)(task, 16, quant)
        _, acc = _train_model(task, spec, cfg, 0)
        accs.append(acc)
    print(f"{variant:14s}" + "".join(f"  {a:.3f} " for a in accs))

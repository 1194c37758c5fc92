"""Photonic QAM multiply-accumulate simulation and quantized complex
networks: constellation math, homodyne-mixer engines, QAT/PTQ training,
the level/hardware/energy equivalence calculus, and an experiment
harness with deterministic CSV outputs.
"""

from .constellation import (
    Constellation1D,
    ConstellationQAM,
    quantize_1d,
    quantize_complex,
    ste_gradient,
)
from .datasets import (
    ImageDataset,
    RFDataset,
    IdxFormatError,
    MODULATION_CATALOG,
    downsample_7x7,
    generate_rf_dataset,
    load_idx,
    make_synthetic_digits,
    real_input_view,
)
from .energy import (
    EquivalenceRow,
    Variant,
    client_activation_energy,
    energy_equivalent_levels,
    equivalence_table,
    write_energy_table,
)
from .network import (
    NetworkSpec,
    NetworkState,
    QuantConfig,
    init_state,
    load_checkpoint,
    network_forward,
    ptq_calibrate,
    ptq_forward,
    save_checkpoint,
    value_count,
)
from .photonics import (
    EngineDesign,
    EngineResources,
    NoiseModel,
    Phasor,
    amplitude_inner_product,
    apply_noise,
    engine_resources,
    four_engine_product,
    iq_inner_product,
    iq_matvec,
    mixer_photocurrents,
    rolled_real_inner_product,
    two_mixer_product,
)
from .training import TrainConfig, TrainHistory, evaluate, train

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Constellation1D",
    "ConstellationQAM",
    "quantize_1d",
    "quantize_complex",
    "ste_gradient",
    "ImageDataset",
    "RFDataset",
    "IdxFormatError",
    "MODULATION_CATALOG",
    "downsample_7x7",
    "generate_rf_dataset",
    "load_idx",
    "make_synthetic_digits",
    "real_input_view",
    "EquivalenceRow",
    "Variant",
    "client_activation_energy",
    "energy_equivalent_levels",
    "equivalence_table",
    "write_energy_table",
    "NetworkSpec",
    "NetworkState",
    "QuantConfig",
    "init_state",
    "load_checkpoint",
    "network_forward",
    "ptq_calibrate",
    "ptq_forward",
    "save_checkpoint",
    "value_count",
    "EngineDesign",
    "EngineResources",
    "NoiseModel",
    "Phasor",
    "amplitude_inner_product",
    "apply_noise",
    "engine_resources",
    "four_engine_product",
    "iq_inner_product",
    "iq_matvec",
    "mixer_photocurrents",
    "rolled_real_inner_product",
    "two_mixer_product",
    "TrainConfig",
    "TrainHistory",
    "evaluate",
    "train",
]

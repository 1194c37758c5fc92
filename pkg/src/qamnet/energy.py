"""Equivalence calculus between QAM and single-axis amplitude networks.

For a total level budget N (a perfect square), four hardware/model variants
are compared: the QAM complex network itself and the three single-axis
baselines that hold levels, modulator precision, or per-value energy
constant. Per-value energies are in units of delta^2 for one *real* value;
a complex value spends two modulators and hence twice the per-axis energy.

Client-side activation energy follows the weight-streaming deployment
model: the client modulates the network input and every hidden-layer
activation, while weights arrive from a server and are not charged here.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

__all__ = [
    "Variant",
    "EquivalenceRow",
    "equivalence_table",
    "client_activation_energy",
    "energy_equivalent_levels",
    "write_energy_table",
    "ENERGY_TABLE_COLUMNS",
]

ENERGY_TABLE_COLUMNS = ["variant", "total_levels", "bits_per_value", "weight_values", "energy_per_value"]


class Variant(enum.Enum):
    QAMNET = "QAMNet"
    LEVEL_EQ_1D = "LevelEq1D"
    HARDWARE_EQ_1D = "HardwareEq1D"
    ENERGY_EQ_1D = "EnergyEq1D"


@dataclass(frozen=True)
class EquivalenceRow:
    """One variant's levels / precision / value-count / energy entry."""

    variant: Variant
    total_levels: int
    bits_per_value: float
    weight_values: int
    energy_per_value: float

    def __post_init__(self) -> None:
        if self.total_levels < 2 or self.weight_values <= 0:
            raise ValueError("counts must be positive")
        if self.energy_per_value < 0:
            raise ValueError("energy_per_value must be >= 0")


def _checked_side(n_total: int) -> int:
    side = math.isqrt(int(n_total))
    if side * side != n_total or n_total < 4:
        raise ValueError(f"total level count must be a perfect square >= 4, got {n_total}")
    return side


def energy_equivalent_levels(n_total: int) -> int:
    """Level count of the 1D network whose per-value energy first reaches
    the QAM network's two-modulator budget: ceil(sqrt(2) * (sqrt(N)-1)) + 1.

    Computed in exact integer arithmetic.
    """
    side = _checked_side(n_total)
    m = 2 * (side - 1) ** 2
    r = math.isqrt(m)
    ceil_sqrt = r if r * r == m else r + 1
    return ceil_sqrt + 1


def _axis_energy(levels: int, delta: float = 1.0) -> float:
    return ((levels - 1) / 2.0) ** 2 * delta**2


def equivalence_table(n_total: int, w: int, h: int, c: int, delta: float = 1.0) -> list[EquivalenceRow]:
    """The four comparison rows for a w^2 -> h -> c single-hidden-layer MLP.

    `n_total` is the QAM constellation's total symbol count and must be a
    perfect square. The energy column of the energy-equivalent variant is
    its *target* (the QAM two-modulator budget); its realized energy at the
    returned level count is at least the target by construction.
    """
    side = _checked_side(n_total)
    if min(w, h, c) < 1:
        raise ValueError("layer sizes must be >= 1")
    real_values = w * w * h + h + h * c + c
    complex_values = 2 * (w * w * h + h) + 2 * (h * c + c)
    eq_levels = energy_equivalent_levels(n_total)
    return [
        EquivalenceRow(Variant.QAMNET, n_total, math.log2(n_total) / 2.0, complex_values,
                       _axis_energy(side, delta)),
        EquivalenceRow(Variant.LEVEL_EQ_1D, n_total, math.log2(n_total), real_values,
                       _axis_energy(n_total, delta)),
        EquivalenceRow(Variant.HARDWARE_EQ_1D, side, math.log2(side), real_values,
                       _axis_energy(side, delta)),
        EquivalenceRow(Variant.ENERGY_EQ_1D, eq_levels, math.log2(eq_levels), real_values,
                       2.0 * _axis_energy(side, delta)),
    ]


def client_activation_energy(layer_sizes: Sequence[int], n_total: int, variant: str | Variant, delta: float = 1.0) -> float:
    """Total modulation energy the client spends on one inference pass.

    Sums the input and hidden activation counts (everything modulated; the
    output layer is read out, not modulated) times the per-value energy of
    the variant at `n_total` levels. `variant` is Variant.QAMNET or any 1D
    variant (all 1D variants share the formula at their own level count).
    """
    sizes = list(layer_sizes)
    if len(sizes) < 2 or min(sizes) < 1:
        raise ValueError(f"layer_sizes needs >= 2 positive entries, got {sizes}")
    modulated = sum(sizes[:-1])
    variant = Variant(variant) if not isinstance(variant, Variant) else variant
    if variant is Variant.QAMNET:
        side = _checked_side(n_total)
        return 2.0 * modulated * _axis_energy(side, delta)
    if n_total < 2:
        raise ValueError(f"1D level count must be >= 2, got {n_total}")
    return modulated * _axis_energy(n_total, delta)


def write_energy_table(n_list: Sequence[int], w: int, h: int, c: int, path: str | Path, delta: float = 1.0) -> None:
    """Write the equivalence table as CSV, four variant rows per N.

    Columns are fixed (ENERGY_TABLE_COLUMNS); rows follow `n_list` order
    with variants in QAMNet, LevelEq1D, HardwareEq1D, EnergyEq1D order.
    """
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(ENERGY_TABLE_COLUMNS)
        for n_total in n_list:
            for row in equivalence_table(n_total, w, h, c, delta):
                writer.writerow([
                    row.variant.value,
                    row.total_levels,
                    repr(row.bits_per_value),
                    row.weight_values,
                    repr(row.energy_per_value),
                ])

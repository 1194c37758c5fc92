"""Amplitude constellations and the uniform quantizers built on them.

A 1D constellation is a uniform grid of L points on the fixed dynamic range
[-1, 1]; a QAM constellation is the Cartesian square of a 1D grid, one axis
per modulator. Energies are expressed in units of delta^2, where delta is
the minimum distinguishable amplitude step of the hardware.

All types are immutable and all operations are pure, so everything here is
safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Constellation1D",
    "ConstellationQAM",
    "quantize_1d",
    "quantize_complex",
    "ste_gradient",
]


@dataclass(frozen=True)
class Constellation1D:
    """Uniform amplitude grid of `levels` points spanning [-1, 1].

    Grid points are {-1 + k * 2/(levels-1) : k = 0..levels-1}; the grid is
    symmetric about 0 and contains 0 exactly when `levels` is odd.
    """

    levels: int
    delta: float = 1.0

    def __post_init__(self) -> None:
        if self.levels < 2:
            raise ValueError(f"a 1D constellation needs at least 2 levels, got {self.levels}")
        if not (self.delta > 0):
            raise ValueError(f"delta must be positive, got {self.delta}")

    @property
    def step(self) -> float:
        """Spacing between adjacent grid points."""
        return 2.0 / (self.levels - 1)

    def grid(self) -> np.ndarray:
        """All grid points, ascending."""
        return -1.0 + self.step * np.arange(self.levels)

    def energy_per_value(self) -> float:
        """Peak modulation energy for one real value, ((L-1)/2)^2 delta^2."""
        return ((self.levels - 1) / 2.0) ** 2 * self.delta**2


@dataclass(frozen=True)
class ConstellationQAM:
    """Square QAM constellation: `side` levels per axis, side^2 symbols."""

    side: int
    delta: float = 1.0

    def __post_init__(self) -> None:
        if self.side < 2:
            raise ValueError(f"a QAM constellation needs side >= 2, got {self.side}")
        if not (self.delta > 0):
            raise ValueError(f"delta must be positive, got {self.delta}")

    @property
    def total_levels(self) -> int:
        return self.side**2

    @property
    def axis(self) -> Constellation1D:
        """The per-axis 1D grid shared by the I and Q modulators."""
        return Constellation1D(self.side, self.delta)

    def symbols(self) -> np.ndarray:
        """All side^2 constellation symbols as a complex array."""
        g = self.axis.grid()
        return (g[:, None] + 1j * g[None, :]).ravel()

    def energy_per_value(self) -> float:
        """Peak energy for one complex value: both modulators, 2((side-1)/2)^2 delta^2."""
        return 2.0 * ((self.side - 1) / 2.0) ** 2 * self.delta**2


def quantize_1d(x, c: Constellation1D):
    """Snap `x` to the nearest grid point of `c` after clamping to [-1, 1].

    Ties (exact midpoints) round half away from zero; a midpoint at exactly
    0 (even level counts only) rounds to the positive grid point. Accepts
    scalars or arrays; the result is always a grid point.
    """
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("quantize_1d requires finite input")
    step = c.step
    xc = np.clip(x, -1.0, 1.0)
    k_low = np.clip(np.floor((xc + 1.0) / step), 0, c.levels - 2)
    # Both candidates use the same expression as grid() so outputs are
    # bit-identical to grid points (low + step can differ by one ulp).
    low = -1.0 + step * k_low
    high = -1.0 + step * (k_low + 1.0)
    d_low = xc - low
    d_high = high - xc
    # Midpoint ties take whichever candidate lies farther from zero.
    take_high = (d_high < d_low) | ((d_high == d_low) & (xc >= 0.0))
    out = np.where(take_high, high, low)
    return out if out.ndim else float(out)


def quantize_complex(z, c: ConstellationQAM):
    """Quantize real and imaginary parts independently on the per-axis grid."""
    z = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(z)):
        raise ValueError("quantize_complex requires finite input")
    axis = c.axis
    out = quantize_1d(z.real, axis) + 1j * quantize_1d(z.imag, axis)
    return out if np.ndim(out) else complex(out)


def ste_gradient(x):
    """Straight-through surrogate derivative of the quantizer.

    1 where the operand lies inside the dynamic range [-1, 1] (boundaries
    included), 0 outside. Complex input is handled per axis and returns
    mask_re + 1j*mask_im.
    """
    x = np.asarray(x)
    if np.iscomplexobj(x):
        out = ste_gradient(x.real) + 1j * ste_gradient(x.imag)
        return out if np.ndim(out) else complex(out)
    if not np.all(np.isfinite(x)):
        raise ValueError("ste_gradient requires finite input")
    out = ((x >= -1.0) & (x <= 1.0)).astype(float)
    return out if out.ndim else float(out)

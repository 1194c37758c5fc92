"""Homodyne-mixer optics for photoelectric multiply-accumulate.

Everything is carried out on complex envelopes: the carrier frequency is
symbolic and drops out of the homodyne algebra, so a modulated signal is
just the complex number I + iQ. The mixer is a 50/50 beamsplitter with
transfer (1/sqrt(2))[[1,1],[1,-1]] feeding balanced photodetectors; an
optional phase shift on the first input port selects which quadrature the
difference current isolates.

For inputs (s1, s2) = (w, x) and phase shift theta on the w port, the
balanced difference of the two squared output magnitudes is

    I+ - I- = 2 * Re(e^{i theta} * w * conj(x))

so theta = 0 reads 2*Re(w x*) and theta = pi/2 reads 2*(w_r x_i - w_i x_r)
= -2*Im(w x*). Note the sign: the raw pi/2 path measures Im(x w*), not
Im(w x*). The inner-product engine therefore wires the quadrature
capacitor as I- - I+ (verified against the exact digital product) so that
`iq_inner_product` returns w . x* under one fixed convention.

The accumulated charge carries a fixed optical gain of 2, which every
engine divides out, making the engine contracts plain inner products.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .constellation import Constellation1D, ConstellationQAM, quantize_1d, quantize_complex

__all__ = [
    "Phasor",
    "MixerConfig",
    "NoiseModel",
    "EngineDesign",
    "EngineResources",
    "BEAMSPLITTER",
    "mixer_photocurrents",
    "apply_noise",
    "iq_inner_product",
    "amplitude_inner_product",
    "rolled_real_inner_product",
    "four_engine_product",
    "two_mixer_product",
    "iq_matvec",
    "amplitude_matvec",
    "engine_resources",
]

_INV_SQRT2 = 1.0 / math.sqrt(2.0)

#: Fixed 50/50 beamsplitter transfer matrix (unitary).
BEAMSPLITTER = np.array([[_INV_SQRT2, _INV_SQRT2], [_INV_SQRT2, -_INV_SQRT2]])


@dataclass(frozen=True)
class Phasor:
    """Amplitude/phase view of a complex envelope."""

    amplitude: float
    phase: float

    def __post_init__(self) -> None:
        if self.amplitude < 0:
            raise ValueError(f"amplitude must be >= 0, got {self.amplitude}")

    @classmethod
    def from_iq(cls, i: float, q: float) -> "Phasor":
        return cls(math.hypot(i, q), math.atan2(q, i))

    @classmethod
    def from_complex(cls, z: complex) -> "Phasor":
        return cls.from_iq(z.real, z.imag)

    def to_iq(self) -> tuple[float, float]:
        return (self.amplitude * math.cos(self.phase), self.amplitude * math.sin(self.phase))

    @property
    def as_complex(self) -> complex:
        i, q = self.to_iq()
        return complex(i, q)


@dataclass(frozen=True)
class MixerConfig:
    """Beamsplitter plus the input phase shift applied to the first port.

    The in-phase mixer uses shift 0; the quadrature mixer uses pi/2.
    """

    input_phase_shift: float = 0.0

    @property
    def transfer(self) -> np.ndarray:
        return BEAMSPLITTER.copy()

    @property
    def full_transfer(self) -> np.ndarray:
        """Beamsplitter composed with the input phase shifter."""
        shift = np.array([[np.exp(1j * self.input_phase_shift), 0.0], [0.0, 1.0]])
        return BEAMSPLITTER @ shift


@dataclass(frozen=True)
class NoiseModel:
    """SNR-parameterized Gaussian readout noise, reproducible per seed.

    snr_db may be math.inf, in which case noise is exactly zero.
    """

    snr_db: float = math.inf
    rng_seed: int = 0

    @property
    def snr_linear(self) -> float:
        return math.inf if math.isinf(self.snr_db) else 10.0 ** (self.snr_db / 10.0)

    @property
    def is_off(self) -> bool:
        return math.isinf(self.snr_db)

    @property
    def below_unity(self) -> bool:
        """True when SNR < 1 (snr_db < 0); callers should flag such runs."""
        return self.snr_db < 0.0

    def make_rng(self) -> np.random.Generator:
        return np.random.default_rng(self.rng_seed)


def mixer_photocurrents(s1, s2, phase_shift: float = 0.0):
    """Photocurrents (I+, I-) at the two balanced-detector ports.

    `s1` gets the input phase shift, then both envelopes pass the fixed
    beamsplitter; each photocurrent is the squared magnitude of its output
    port. Accepts scalars or broadcastable arrays.
    """
    s1 = np.asarray(s1, dtype=complex)
    s2 = np.asarray(s2, dtype=complex)
    a = np.exp(1j * phase_shift) * s1
    out_plus = (a + s2) * _INV_SQRT2
    out_minus = (a - s2) * _INV_SQRT2
    i_plus = np.abs(out_plus) ** 2
    i_minus = np.abs(out_minus) ** 2
    if i_plus.ndim == 0:
        return float(i_plus), float(i_minus)
    return i_plus, i_minus


def apply_noise(v, snr_db: float, rng: np.random.Generator) -> np.ndarray:
    """Perturb each element of `v` with iid N(0, sigma_noise^2).

    sigma_noise = sigma_signal / sqrt(SNR_linear), where sigma_signal is the
    population standard deviation of `v` itself (the readout vector of one
    matrix-vector product). snr_db = +inf returns `v` unchanged. SNR below
    unity is permitted; callers are expected to flag it in run metadata.
    """
    v = np.asarray(v, dtype=float)
    if v.size == 0:
        raise ValueError("apply_noise requires a non-empty vector")
    if math.isinf(snr_db):
        return v.copy()
    sigma_signal = float(v.std())
    sigma_noise = sigma_signal / math.sqrt(10.0 ** (snr_db / 10.0))
    return v + rng.normal(0.0, sigma_noise, size=v.shape) if sigma_noise > 0 else v.copy()


def _noise_rng(noise: NoiseModel | None, rng: np.random.Generator | None) -> np.random.Generator | None:
    if noise is None or noise.is_off:
        return None
    return rng if rng is not None else noise.make_rng()


def _readout(values: np.ndarray, noise: NoiseModel | None, rng: np.random.Generator | None) -> np.ndarray:
    gen = _noise_rng(noise, rng)
    if gen is None:
        return values
    return apply_noise(values, noise.snr_db, gen)


def _iq_path_sums(w: np.ndarray, x: np.ndarray, axis=-1) -> tuple[np.ndarray, np.ndarray]:
    """Capacitor charges of both beam paths after n timesteps.

    Returns (real_charge, imag_charge) = (sum I+ - I- of the in-phase
    mixer, sum I- - I+ of the quadrature mixer); each equals 2x the
    respective component of w . x*.
    """
    ip_b, im_b = mixer_photocurrents(w, x, 0.0)
    ip_t, im_t = mixer_photocurrents(w, x, math.pi / 2.0)
    real_charge = np.sum(ip_b - im_b, axis=axis)
    imag_charge = np.sum(im_t - ip_t, axis=axis)
    return real_charge, imag_charge


def _check_pair(w: np.ndarray, x: np.ndarray) -> None:
    if w.ndim != 1 or x.ndim != 1:
        raise ValueError("inner-product operands must be 1D vectors")
    if w.size == 0:
        raise ValueError("inner-product operands must be non-empty")
    if w.shape != x.shape:
        raise ValueError(f"length mismatch: {w.shape[0]} vs {x.shape[0]}")


def iq_inner_product(
    w,
    x,
    quant: ConstellationQAM | None = None,
    noise: NoiseModel | None = None,
    rng: np.random.Generator | None = None,
) -> complex:
    """Complex inner product w . x* via the I/Q photoelectric multiplier.

    Simulates one timestep per element: both operands are (optionally)
    quantized to the QAM constellation, each element pair drives the
    in-phase and quadrature mixers, balanced-detection differences
    accumulate on two capacitors, and the fixed optical gain of 2 is
    divided out. Readout noise is applied to the two accumulators jointly
    (they are this product's output vector).
    """
    w = np.asarray(w, dtype=complex)
    x = np.asarray(x, dtype=complex)
    _check_pair(w, x)
    if quant is not None:
        w = quantize_complex(w, quant)
        x = quantize_complex(x, quant)
    real_charge, imag_charge = _iq_path_sums(w, x)
    readout = _readout(np.array([real_charge / 2.0, imag_charge / 2.0]), noise, rng)
    return complex(readout[0], readout[1])


def amplitude_inner_product(
    w,
    x,
    quant: Constellation1D | None = None,
    noise: NoiseModel | None = None,
    rng: np.random.Generator | None = None,
) -> float:
    """Real dot product w . x on the single-axis amplitude baseline.

    One in-phase mixer path per element; the accumulated charge (gain 2,
    divided out) is the scalar readout. With a scalar readout the noise
    model's sigma_signal is zero, so standalone calls stay exact; layer
    noise enters through `amplitude_matvec`.
    """
    w = np.asarray(w, dtype=float)
    x = np.asarray(x, dtype=float)
    _check_pair(w, x)
    if quant is not None:
        w = quantize_1d(w, quant)
        x = quantize_1d(x, quant)
    ip, im = mixer_photocurrents(w.astype(complex), x.astype(complex), 0.0)
    value = np.sum(ip - im) / 2.0
    readout = _readout(np.array([value]), noise, rng)
    return float(readout[0])


def rolled_real_inner_product(
    a,
    b,
    noise: NoiseModel | None = None,
    rng: np.random.Generator | None = None,
) -> tuple[float, int]:
    """Real dot product in ceil(n/2) timesteps by packing pairs into I/Q.

    Consecutive value pairs become the real and imaginary parts of one
    complex element (odd lengths are zero-padded), the I/Q engine runs on
    the packed vectors, and the real capacitor carries the answer.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    _check_pair(a, b)
    if a.size % 2:
        a = np.append(a, 0.0)
        b = np.append(b, 0.0)
    wc = a[0::2] + 1j * a[1::2]
    xc = b[0::2] + 1j * b[1::2]
    value = iq_inner_product(wc, xc, quant=None, noise=noise, rng=rng)
    return value.real, wc.size


def _amplitude_mix(u: float, v: float, phase: float = 0.0) -> float:
    """One amplitude mixer shot: balanced difference / gain = u*v (or -u*v at phase pi)."""
    ip, im = mixer_photocurrents(complex(u), complex(v), phase)
    return (ip - im) / 2.0


def four_engine_product(w: complex, x: complex) -> complex:
    """w * conj(x) from four single-shot amplitude mixers.

    The four partial products a*c, b*d, -a*d, b*c (w = a+ib, x = c+id) run
    on separate mixers, the minus sign coming from a pi phase shift on the
    a-d path, and are combined electronically.
    """
    a, b = w.real, w.imag
    c, d = x.real, x.imag
    real_part = _amplitude_mix(a, c) + _amplitude_mix(b, d)
    imag_part = _amplitude_mix(b, c) + _amplitude_mix(a, d, math.pi)
    return complex(real_part, imag_part)


def two_mixer_product(w: complex, x: complex) -> tuple[complex, int]:
    """w * conj(x) from two amplitude mixers over two sequential timesteps.

    Timestep 1 accumulates the real part (a*c + b*d) on the pair of mixers,
    timestep 2 reuses them for the imaginary part (b*c - a*d); three
    modulators suffice because the w-side values are re-driven between
    steps.
    """
    a, b = w.real, w.imag
    c, d = x.real, x.imag
    real_part = _amplitude_mix(a, c) + _amplitude_mix(b, d)
    imag_part = _amplitude_mix(b, c) + _amplitude_mix(a, d, math.pi)
    return complex(real_part, imag_part), 2


def iq_matvec(
    W,
    x,
    quant: ConstellationQAM | None = None,
    noise: NoiseModel | None = None,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """Row-by-row I/Q inner products W . x* with layer-scope readout noise.

    All rows share one noise application: the 2h real accumulator readouts
    (interleaved re/im, the memory layout of the complex result) form the
    output vector whose population std sets sigma_signal.
    """
    W = np.asarray(W, dtype=complex)
    x = np.asarray(x, dtype=complex)
    if W.ndim != 2 or x.ndim != 1 or W.shape[1] != x.shape[0]:
        raise ValueError(f"shape mismatch: W {W.shape} vs x {x.shape}")
    if quant is not None:
        W = quantize_complex(W, quant)
        x = quantize_complex(x, quant)
    real_charge, imag_charge = _iq_path_sums(W, x[None, :], axis=1)
    out = (real_charge + 1j * imag_charge) / 2.0
    gen = _noise_rng(noise, rng)
    if gen is not None:
        flat = out.view(float)
        out = apply_noise(flat, noise.snr_db, gen).view(complex)
    return out


def amplitude_matvec(
    W,
    x,
    quant: Constellation1D | None = None,
    noise: NoiseModel | None = None,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """Row-by-row amplitude dot products W . x with layer-scope noise."""
    W = np.asarray(W, dtype=float)
    x = np.asarray(x, dtype=float)
    if W.ndim != 2 or x.ndim != 1 or W.shape[1] != x.shape[0]:
        raise ValueError(f"shape mismatch: W {W.shape} vs x {x.shape}")
    if quant is not None:
        W = quantize_1d(W, quant)
        x = quantize_1d(x, quant)
    ip, im = mixer_photocurrents(W.astype(complex), x[None, :].astype(complex), 0.0)
    out = np.sum(ip - im, axis=1) / 2.0
    return _readout(out, noise, rng)


class EngineDesign(enum.Enum):
    """The three complex inner-product engine designs."""

    IQ = "iq"
    FOUR_ENGINE = "four_engine"
    TWO_MIXER = "two_mixer"


@dataclass(frozen=True)
class EngineResources:
    """Hardware budget per complex multiply-accumulate."""

    modulators: int
    mixers: int
    timesteps: int


_RESOURCES = {
    EngineDesign.IQ: EngineResources(modulators=4, mixers=2, timesteps=1),
    EngineDesign.FOUR_ENGINE: EngineResources(modulators=4, mixers=4, timesteps=1),
    EngineDesign.TWO_MIXER: EngineResources(modulators=3, mixers=2, timesteps=2),
}


def engine_resources(design: EngineDesign) -> EngineResources:
    """Modulator/mixer/timestep counts for an engine design."""
    return _RESOURCES[EngineDesign(design)]

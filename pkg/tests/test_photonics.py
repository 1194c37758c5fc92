import math

import numpy as np
import pytest

from qamnet.constellation import Constellation1D, ConstellationQAM
from qamnet.photonics import (
    BEAMSPLITTER,
    EngineDesign,
    MixerConfig,
    NoiseModel,
    Phasor,
    amplitude_inner_product,
    amplitude_matvec,
    apply_noise,
    engine_resources,
    four_engine_product,
    iq_inner_product,
    iq_matvec,
    mixer_photocurrents,
    rolled_real_inner_product,
    two_mixer_product,
)


def test_phasor_roundtrip():
    p = Phasor.from_iq(0.6, -0.3)
    i, q = p.to_iq()
    assert (i, q) == pytest.approx((0.6, -0.3))
    assert Phasor.from_complex(0.6 - 0.3j).as_complex == pytest.approx(0.6 - 0.3j)
    with pytest.raises(ValueError):
        Phasor(amplitude=-0.1, phase=0.0)


def test_beamsplitter_is_unitary():
    eye = BEAMSPLITTER @ BEAMSPLITTER.T
    np.testing.assert_allclose(eye, np.eye(2), atol=1e-15)
    full = MixerConfig(input_phase_shift=0.7).full_transfer
    np.testing.assert_allclose(full @ full.conj().T, np.eye(2), atol=1e-15)


def test_photocurrents_conserve_energy():
    rng = np.random.default_rng(2)
    s1 = rng.normal(size=64) + 1j * rng.normal(size=64)
    s2 = rng.normal(size=64) + 1j * rng.normal(size=64)
    for theta in (0.0, math.pi / 2.0, 1.3):
        ip, im = mixer_photocurrents(s1, s2, theta)
        np.testing.assert_allclose(ip + im, np.abs(s1) ** 2 + np.abs(s2) ** 2, rtol=0, atol=1e-12)


def test_photocurrent_difference_reads_quadratures():
    s1, s2 = 0.6 - 0.3j, 0.2 + 0.5j
    ip, im = mixer_photocurrents(s1, s2)
    assert (ip, im) == pytest.approx((0.34, 0.40))
    assert ip - im == pytest.approx(2.0 * (s1 * np.conj(s2)).real)
    qp, qm = mixer_photocurrents(s1, s2, math.pi / 2.0)
    assert qp - qm == pytest.approx(-2.0 * (s1 * np.conj(s2)).imag)


def test_iq_inner_product_matches_digital():
    rng = np.random.default_rng(3)
    for n in (1, 2, 5, 33):
        w = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
        x = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
        got = iq_inner_product(w, x)
        ref = complex(np.sum(w * np.conj(x)))
        assert got == pytest.approx(ref, rel=1e-12, abs=1e-12)


def test_iq_inner_product_quantizes_both_operands():
    q = ConstellationQAM(side=2)  # axis grid {-1, +1}
    w = np.array([0.9 + 0.1j])
    x = np.array([0.2 - 0.8j])
    got = iq_inner_product(w, x, quant=q)
    ref = (1 + 1j) * np.conj(1 - 1j)
    assert got == pytest.approx(complex(ref))


def test_inner_product_input_validation():
    with pytest.raises(ValueError):
        iq_inner_product(np.zeros((2, 2), complex), np.zeros(4, complex))
    with pytest.raises(ValueError):
        iq_inner_product(np.zeros(0, complex), np.zeros(0, complex))
    with pytest.raises(ValueError):
        amplitude_inner_product(np.ones(3), np.ones(4))


def test_amplitude_inner_product_matches_dot():
    rng = np.random.default_rng(4)
    a = rng.uniform(-1, 1, 17)
    b = rng.uniform(-1, 1, 17)
    assert amplitude_inner_product(a, b) == pytest.approx(float(a @ b), rel=1e-12)
    c = Constellation1D(levels=2)
    assert amplitude_inner_product(np.array([0.3]), np.array([-0.2]), quant=c) == pytest.approx(-1.0)


def test_rolled_real_inner_product_values_and_timesteps():
    rng = np.random.default_rng(5)
    for n in (1, 2, 3, 8, 9, 64, 65):
        a = rng.uniform(-1, 1, n)
        b = rng.uniform(-1, 1, n)
        value, steps = rolled_real_inner_product(a, b)
        assert steps == (n + 1) // 2
        assert value == pytest.approx(float(a @ b), rel=1e-12, abs=1e-12)


def test_single_shot_engines_agree():
    rng = np.random.default_rng(6)
    for _ in range(50):
        w = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        x = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        ref = w * np.conj(x)
        assert four_engine_product(w, x) == pytest.approx(ref, rel=1e-12, abs=1e-12)
        value, steps = two_mixer_product(w, x)
        assert steps == 2
        assert value == pytest.approx(ref, rel=1e-12, abs=1e-12)


def test_engine_resources_table():
    assert engine_resources(EngineDesign.IQ) == engine_resources("iq")
    r = engine_resources(EngineDesign.IQ)
    assert (r.modulators, r.mixers, r.timesteps) == (4, 2, 1)
    r = engine_resources(EngineDesign.FOUR_ENGINE)
    assert (r.modulators, r.mixers, r.timesteps) == (4, 4, 1)
    r = engine_resources(EngineDesign.TWO_MIXER)
    assert (r.modulators, r.mixers, r.timesteps) == (3, 2, 2)


def test_noise_model_properties():
    off = NoiseModel()
    assert off.is_off and math.isinf(off.snr_linear)
    m = NoiseModel(snr_db=10.0)
    assert m.snr_linear == pytest.approx(10.0)
    assert not m.below_unity
    assert NoiseModel(snr_db=-3.0).below_unity
    a = NoiseModel(snr_db=10.0, rng_seed=42).make_rng().normal(size=4)
    b = NoiseModel(snr_db=10.0, rng_seed=42).make_rng().normal(size=4)
    np.testing.assert_array_equal(a, b)


def test_apply_noise_infinite_snr_is_exact():
    v = np.array([0.1, -0.4, 2.0])
    out = apply_noise(v, math.inf, np.random.default_rng(0))
    np.testing.assert_array_equal(out, v)
    assert out is not v  # returns a copy, never the input


def test_apply_noise_scales_with_signal_std():
    rng = np.random.default_rng(9)
    v = rng.normal(0.0, 2.0, 20000)
    sigma_signal = v.std()
    for snr_db in (20.0, 0.0, -10.0):
        noisy = apply_noise(v, snr_db, np.random.default_rng(123))
        sigma = (noisy - v).std()
        expect = sigma_signal / math.sqrt(10.0 ** (snr_db / 10.0))
        assert sigma == pytest.approx(expect, rel=0.05)


def test_apply_noise_rejects_empty():
    with pytest.raises(ValueError):
        apply_noise(np.zeros(0), 10.0, np.random.default_rng(0))


def test_iq_inner_product_noise_is_seeded_and_joint():
    w = np.array([0.4 + 0.2j, -0.1 + 0.6j, 0.3 - 0.3j])
    x = np.array([0.2 - 0.5j, 0.6 + 0.1j, -0.2 + 0.2j])
    noise = NoiseModel(snr_db=10.0, rng_seed=7)
    a = iq_inner_product(w, x, noise=noise)
    b = iq_inner_product(w, x, noise=noise)
    assert a == b
    clean = iq_inner_product(w, x)
    assert a != clean


def test_matvec_matches_row_products_and_noise_scope():
    rng = np.random.default_rng(12)
    W = rng.uniform(-1, 1, (6, 5)) + 1j * rng.uniform(-1, 1, (6, 5))
    x = rng.uniform(-1, 1, 5) + 1j * rng.uniform(-1, 1, 5)
    out = iq_matvec(W, x)
    ref = W @ np.conj(x)
    np.testing.assert_allclose(out, ref, rtol=1e-12)
    # layer-scope noise: the interleaved readouts share one sigma_signal
    noise = NoiseModel(snr_db=6.0, rng_seed=3)
    noisy = iq_matvec(W, x, noise=noise)
    flat_ref = ref.view(float)
    expect = apply_noise(flat_ref, 6.0, np.random.default_rng(3)).view(complex)
    np.testing.assert_allclose(noisy, expect, rtol=1e-12)

    A = rng.uniform(-1, 1, (4, 7))
    v = rng.uniform(-1, 1, 7)
    np.testing.assert_allclose(amplitude_matvec(A, v), A @ v, rtol=1e-12)

"""
One complex multiply, done with light
=====================================

Walks a single w * conj(x) product through the homodyne mixer pieces:
envelopes in, photocurrents out, capacitor charge, and the three engine
designs that trade modulators, mixers, and timesteps against each other.
"""

import numpy as np

from qamnet import (
    Phasor,
    engine_resources,
    EngineDesign,
    four_engine_product,
    iq_inner_product,
    mixer_photocurrents,
    rolled_real_inner_product,
    two_mixer_product,
)

# Two complex values, written as phasors the way a modulator would see them:
w = Phasor.from_iq(0.6, -0.3).as_complex
x = Phasor.from_iq(0.2, 0.5).as_complex
print("w =", w, " x =", x, " w * conj(x) =", w * np.conj(x))

# One mixer shot: both envelopes hit the 50/50 beamsplitter, and the two
# output ports land on photodetectors. The difference of the photocurrents
# is twice the real part of w * conj(x).
i_plus, i_minus = mixer_photocurrents(w, x)
print("in-phase mixer:   I+ - I- =", i_plus - i_minus, "  2 Re(w x*) =", 2 * (w * np.conj(x)).real)

# A quarter-wave shift on the w port moves the measurement to the other
# quadrature. Note the sign: the raw difference reads -2 Im(w x*), which is
# why the engine wires this capacitor backwards.
q_plus, q_minus = mixer_photocurrents(w, x, np.pi / 2)
print("quadrature mixer: I+ - I- =", q_plus - q_minus, " -2 Im(w x*) =", -2 * (w * np.conj(x)).imag)

# The I/Q engine runs both mixers at once over a whole vector, one element
# per timestep, and the capacitors integrate the answer.
rng = np.random.default_rng(0)
wv = rng.uniform(-0.7, 0.7, 8) + 1j * rng.uniform(-0.7, 0.7, 8)
xv = rng.uniform(-0.7, 0.7, 8) + 1j * rng.uniform(-0.7, 0.7, 8)
print("\niq engine:  ", iq_inner_product(wv, xv))
print("digital ref:", np.sum(wv * np.conj(xv)))

# The other two engines split the same arithmetic differently.
print("\nfour-engine:", four_engine_product(w, x))
value, steps = two_mixer_product(w, x)
print("two-mixer:  ", value, f"({steps} timesteps)")
for design in EngineDesign:
    r = engine_resources(design)
    print(f"  {design.value:12s} modulators={r.modulators} mixers={r.mixers} timesteps={r.timesteps}")

# Real-valued networks can ride the same hardware by packing consecutive
# value pairs into the I and Q rails: n real products in ceil(n/2) steps.
a = rng.uniform(-1, 1, 9)
b = rng.uniform(-1, 1, 9)
value, steps = rolled_real_inner_product(a, b)
print("\nrolled real dot:", value, f"({steps} timesteps for n=9)")
print("digital ref:    ", float(a @ b))

"""Mach-Zehnder interferometer with one photon.

Two equal splitters give P(photon leaves by port a) = cos^2(2 theta).
"""
# %%
import math

import numpy as np

from fockoptics import fock_state, mach_zehnder, run_circuit, schmidt_decompose
from fockoptics.interferometer import sweep_theta

thetas = np.linspace(0, math.pi / 2, 9)
probs = sweep_theta(fock_state(1, 0, 2), thetas, lambda t: mach_zehnder(t, t, 2))
for t, p in zip(thetas, probs):
    print(f"theta={t:.4f}  P_a1={p:.6f}  cos^2(2 theta)={math.cos(2 * t) ** 2:.6f}")

# %%
# At theta = pi/8 the photon is shared evenly: one ebit between the two output modes.
out = run_circuit(fock_state(1, 0, 2), mach_zehnder(math.pi / 8, math.pi / 8, 2))
print(out)
print("entropy (bits):", schmidt_decompose(out).entropy_bits)

# %%
# At theta = pi/4 port a is dark.
out = run_circuit(fock_state(1, 0, 2), mach_zehnder(math.pi / 4, math.pi / 4, 2))
print("P_a1 at pi/4:", abs(out[1, 0]) ** 2)

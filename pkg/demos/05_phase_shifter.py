"""A phase shifter inside the interferometer lights up the dark port."""
# %%
import math

import numpy as np

from fockoptics.interferometer import phase_scenario

for phi in np.linspace(0, 2 * math.pi, 9):
    print(f"phi={phi:.4f}  P_a1={phase_scenario(math.pi / 4, phi):.6f}")

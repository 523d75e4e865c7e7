"""Photon-number statistics."""
# %%
from fockoptics import coherent_state, fock_state, photon_stats, thermal_distribution

# Poissonian, sub-Poissonian and super-Poissonian light.
print("coherent :", photon_stats(coherent_state(1.5, "a", 30), "a"))
print("number   :", photon_stats(fock_state(3, 0, 4), "a"))

# %%
thermal = thermal_distribution(1.0, cutoff=8)
print("thermal p_n:", thermal.probabilities)
print("weight above cutoff:", thermal.tail)

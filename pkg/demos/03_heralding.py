"""Two photons, bunching and heralded number states."""
# %%
import math

from fockoptics import fidelity, fock_ladder_protocol, fock_state, mach_zehnder, measure_mode, run_circuit

# |1,1> through an interferometer of two pi/8 splitters: the photons leave together.
out = run_circuit(fock_state(1, 1, 4), mach_zehnder(math.pi / 8, math.pi / 8, 4))
print(out)

# %%
# Seeing no photon in mode a leaves exactly two photons in mode b.
rec = measure_mode(out, "a", 0)
print("herald probability:", rec.probability)
print("fidelity with |0,2>:", fidelity(rec.conditional_state, fock_state(0, 2, 4)))

# %%
# Feeding the heralded state into further stages, each with a one-photon ancilla,
# climbs the number ladder. The success probability shrinks with each stage.
for n in range(1, 5):
    res = fock_ladder_protocol(n, math.pi / 8, cutoff=n + 1)
    print(n, "stages:", [round(p, 4) for p in res.stage_probabilities], "total", round(res.success_probability, 5), "bound", 2.0**-n)

"""Coherent and cat states through splitters."""
# %%
import math

from fockoptics import CatSpec, cat_state, coherent_state, fidelity, photon_stats, required_cutoff, run_circuit
from fockoptics import mach_zehnder, schmidt_decompose
from fockoptics.oracle import oracle_case2, oracle_case8
from fockoptics.splitter import apply_bs

# The cutoff comes from the Poisson tail of |alpha|^2.
alpha = 2.0
n_max = required_cutoff(abs(alpha) ** 2)
print("cutoff for |alpha|^2 = 4:", n_max)

# %%
# A coherent beam splits into two coherent beams with no entanglement.
out = apply_bs(coherent_state(alpha, "a", n_max), math.pi / 4)
print("fidelity with |T alpha>|i R alpha>:", fidelity(out, oracle_case2(math.pi / 4, alpha, n_max)))
print("means:", photon_stats(out, "a").mean, photon_stats(out, "b").mean)
print("entropy:", schmidt_decompose(out).entropy_bits)

# %%
# A cat state does get entangled across the two outputs.
spec = CatSpec(2.0, -2.0, sign=-1)
cat, spec = cat_state(spec, "a", n_max)
print("eta:", spec.eta)
for theta in (0.0, math.pi / 8, math.pi / 4):
    out = run_circuit(cat, mach_zehnder(theta, theta, n_max))
    print(
        f"theta={theta:.4f}",
        "entropy", round(schmidt_decompose(out).entropy_bits, 6),
        "oracle F", fidelity(out, oracle_case8(theta, theta, spec, n_max)),
    )

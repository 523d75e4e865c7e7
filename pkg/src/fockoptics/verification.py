"""Engine-versus-closed-form cross-checks, runnable as one suite.

Every check reports the largest deviation it saw next to its tolerance.
Random angles and states come from a seeded generator so that two runs with
the same seed report identical numbers.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .fock import CatSpec, cat_state, coherent_state, fock_state, random_state, required_cutoff
from .interferometer import (
    detection_probability,
    fock_ladder_protocol,
    mach_zehnder,
    measure_mode,
    phase_scenario,
    run_circuit,
)
from .metrics import fidelity, schmidt_decompose, thermal_distribution, total_mean_photons
from .operators import annihilation_matrix, creation_matrix
from .oracle import (
    oracle_case1,
    oracle_case2,
    oracle_case4,
    oracle_case5,
    oracle_case5_equal,
    oracle_case6,
    oracle_case6_equal,
    oracle_case7,
    oracle_case8,
)
from .splitter import (
    SplitterParams,
    apply_bs,
    apply_bs_analytic,
    apply_bs_numeric,
    bch_series_check,
    flipped_convention,
    heisenberg_deviation,
    scattering_roundtrip,
)

DEFAULT_SEED = 20240611
SPECIAL_ANGLES = (0.0, math.pi / 8, math.pi / 4, math.pi / 2, math.pi)


@dataclass(frozen=True)
class CheckResult:
    name: str
    deviation: float
    tolerance: float
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    seed: int
    cutoff: int
    results: list[CheckResult] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)


def _check(name, deviation, tolerance, detail="", strict=False) -> CheckResult:
    deviation = abs(float(deviation))
    ok = deviation < tolerance if strict else deviation <= tolerance
    return CheckResult(name, deviation, tolerance, bool(ok and math.isfinite(deviation)), detail)


def _max_amp(x, y) -> float:
    return float(np.max(np.abs(x.amps - y.amps)))


def check_single_photon(rng, cutoff):
    thetas = rng.uniform(-math.pi, math.pi, 50)
    dev = max(_max_amp(apply_bs(fock_state(1, 0, cutoff), SplitterParams(t)), oracle_case1(t, cutoff)) for t in thetas)
    yield _check("case1_single_photon_amplitudes", dev, 1e-12, "50 random theta")
    p = SplitterParams(math.pi / 4)
    dev = _max_amp(apply_bs_numeric(fock_state(1, 0, cutoff), p), oracle_case1(p, cutoff))
    yield _check("splitter_transform_one_photon_block", dev, 1e-12, "theta=pi/4, T|1,0> + iR|0,1>")


def check_heisenberg(rng, cutoff):
    thetas = [0.0, 0.1, math.pi / 8, math.pi / 4, math.pi / 2, *rng.uniform(-math.pi, math.pi, 3)]
    for mode in ("a", "b"):
        dev = max(heisenberg_deviation(SplitterParams(t), mode, cutoff) for t in thetas)
        yield _check(f"heisenberg_conjugate_creation_{mode}", dev, 1e-10, f"cutoff {cutoff}, interior block")
    for t in SPECIAL_ANGLES:
        yield _check(f"scattering_roundtrip_theta={t:.6g}", scattering_roundtrip(SplitterParams(t)), 1e-15)


def check_bch(rng, cutoff):
    for t in (0.1, math.pi / 8, math.pi / 4, math.pi / 2):
        yield _check(f"bch_order20_theta={t:.6g}", bch_series_check(SplitterParams(t), 20, cutoff), 1e-8)


def check_commutators(rng, cutoff):
    ad = creation_matrix(cutoff).matrix
    a = annihilation_matrix(cutoff).matrix
    comm = (a @ ad - ad @ a)[:cutoff, :cutoff]
    yield _check("commutator_a_adag_interior", np.max(np.abs(comm - np.eye(cutoff))), 1e-12)


def check_coherent_split(rng, cutoff):
    worst_f = worst_n = 0.0
    for alpha in (1, 2, 1 + 1j):
        c = required_cutoff(abs(alpha) ** 2)
        psi = coherent_state(alpha, "a", c)
        for t in (math.pi / 8, math.pi / 4):
            out = apply_bs(psi, SplitterParams(t))
            worst_f = max(worst_f, 1 - fidelity(out, oracle_case2(t, alpha, c)))
            worst_n = max(worst_n, abs(total_mean_photons(out) - total_mean_photons(psi)))
    yield _check("case2_coherent_split_fidelity", worst_f, 1e-10)
    yield _check("case2_mean_photons_conserved", worst_n, 1e-12)


def check_mach_zehnder(rng, cutoff):
    thetas = np.linspace(0, math.pi, 101)
    psi = fock_state(1, 0, cutoff)
    dev = 0.0
    for t in thetas:
        p = SplitterParams(t)
        out = run_circuit(psi, mach_zehnder(p, p, cutoff))
        dev = max(dev, abs(detection_probability(out, "a", 1) - math.cos(2 * t) ** 2))
    yield _check("case4_mz_probability_cos2", dev, 1e-12, "101-point grid")
    p = SplitterParams(math.pi / 4)
    null = detection_probability(run_circuit(psi, mach_zehnder(p, p, cutoff)), "a", 1)
    yield _check("case4_destructive_null", null, 1e-20, strict=True)
    p = SplitterParams(math.pi / 8)
    ent = schmidt_decompose(run_circuit(psi, mach_zehnder(p, p, cutoff))).entropy_bits
    yield _check("case4_balanced_entropy_1bit", abs(ent - 1.0), 1e-12)


def _engine(state, t1, t2, cutoff, method="numeric"):
    return run_circuit(state, mach_zehnder(SplitterParams(t1), SplitterParams(t2), cutoff), method=method)


def check_oracle_grid(rng, cutoff):
    """Every case at the special angles plus random ones, by fidelity and by amplitude."""
    thetas = [*SPECIAL_ANGLES, *rng.uniform(-math.pi, math.pi, 20)]
    fock_cases = {
        "case4": (fock_state(1, 0, cutoff), oracle_case4),
        "case5": (fock_state(2, 0, cutoff), oracle_case5),
        "case6": (fock_state(1, 1, cutoff), oracle_case6),
    }
    for name, (psi, oracle) in fock_cases.items():
        dev_f = dev_a = 0.0
        for t in thetas:
            out = _engine(psi, t, t, cutoff)
            ref = oracle(t, t, cutoff)
            dev_f = max(dev_f, 1 - fidelity(out, ref))
            dev_a = max(dev_a, _max_amp(out, ref))
        yield _check(f"{name}_oracle_fidelity", dev_f, 1e-10)
        yield _check(f"{name}_oracle_amplitudes", dev_a, 1e-10)

    dev = 0.0
    for t in thetas:
        dev = max(dev, _max_amp(apply_bs(fock_state(1, 0, cutoff), SplitterParams(t)), oracle_case1(t, cutoff)))
    yield _check("case1_oracle_amplitudes", dev, 1e-12)

    alpha = 1.2 - 0.5j
    c = required_cutoff(abs(alpha) ** 2)
    psi = coherent_state(alpha, "a", c)
    dev = dev2 = 0.0
    for t in thetas:
        dev = max(dev, 1 - fidelity(_engine(psi, t, t, c), oracle_case7(t, t, alpha, c)))
        dev2 = max(dev2, 1 - fidelity(apply_bs(psi, SplitterParams(t)), oracle_case2(t, alpha, c)))
    yield _check("case7_oracle_fidelity", dev, 1e-10)
    yield _check("case2_oracle_fidelity", dev2, 1e-10)

    cat = CatSpec(1.5, -1.5, -1)
    c = required_cutoff(2.25)
    psi, _ = cat_state(cat, "a", c)
    dev = max(1 - fidelity(_engine(psi, t, t, c), oracle_case8(t, t, cat, c)) for t in thetas)
    yield _check("case8_oracle_fidelity", dev, 1e-10)


def check_general_formulas(rng, cutoff):
    pairs = rng.uniform(-math.pi, math.pi, (50, 2))
    for name, psi, oracle in (
        ("case5", fock_state(2, 0, cutoff), oracle_case5),
        ("case6", fock_state(1, 1, cutoff), oracle_case6),
    ):
        dev = max(1 - fidelity(_engine(psi, t1, t2, cutoff), oracle(t1, t2, cutoff)) for t1, t2 in pairs)
        yield _check(f"{name}_general_formula_random_pairs", dev, 1e-10, "50 independent (theta1, theta2)")
    special = [
        ("case5_theta0_is_2_0", fock_state(2, 0, cutoff), 0.0, fock_state(2, 0, cutoff)),
        ("case5_theta_pi/2_is_2_0", fock_state(2, 0, cutoff), math.pi / 2, fock_state(2, 0, cutoff)),
        ("case5_theta_pi/4_is_0_2", fock_state(2, 0, cutoff), math.pi / 4, fock_state(0, 2, cutoff)),
        ("case5_theta_pi/8", fock_state(2, 0, cutoff), math.pi / 8, oracle_case5_equal(math.pi / 8, cutoff)),
        ("case6_theta_pi/4_is_1_1", fock_state(1, 1, cutoff), math.pi / 4, fock_state(1, 1, cutoff)),
        ("case6_theta_pi_is_1_1", fock_state(1, 1, cutoff), math.pi, fock_state(1, 1, cutoff)),
        ("case6_theta_pi/8_bunched", fock_state(1, 1, cutoff), math.pi / 8, oracle_case6_equal(math.pi / 8, cutoff)),
    ]
    for name, psi, t, ref in special:
        yield _check(name, 1 - fidelity(_engine(psi, t, t, cutoff), ref), 1e-10)


def check_heralding(rng, cutoff):
    p = SplitterParams(math.pi / 8)
    out = _engine(fock_state(1, 1, cutoff), p.theta, p.theta, cutoff)
    rec = measure_mode(out, "a", 0)
    yield _check("herald_probability_half", abs(rec.probability - 0.5), 1e-12)
    yield _check("herald_conditional_is_fock2", abs(1 - fidelity(rec.conditional_state, fock_state(0, 2, cutoff))), 1e-12)
    worst = -math.inf
    for n in range(1, min(cutoff - 1, 5) + 1):
        res = fock_ladder_protocol(n, math.pi / 8, cutoff)
        worst = max(worst, res.success_probability - 2.0**-n)
    yield _check("ladder_success_below_2^-n", max(worst, 0.0), 1e-12)


def check_cat(rng, cutoff):
    c = required_cutoff(4.0)
    dev = 0.0
    for sign in (1, -1):
        cat = CatSpec(2, -2, sign)
        psi, _ = cat_state(cat, "a", c)
        for t in (0.0, math.pi / 8, math.pi / 4):
            dev = max(dev, 1 - fidelity(_engine(psi, t, t, c), oracle_case8(t, t, cat, c)))
    yield _check("case8_cat_fidelity", dev, 1e-9, f"alpha=2, beta=-2, cutoff {c}")


def check_cross_method(rng, cutoff):
    dev = 0.0
    for _ in range(200):
        psi = random_state(cutoff, rng)
        p = SplitterParams(rng.uniform(-math.pi, math.pi))
        dev = max(dev, _max_amp(apply_bs_analytic(psi, p), apply_bs_numeric(psi, p)))
    yield _check("analytic_vs_numeric_200_states", dev, 1e-10, f"cutoff {cutoff}")


def check_unitarity(rng, cutoff):
    norm = comp = inv = 0.0
    for _ in range(20):
        psi = random_state(cutoff, rng)
        t1, t2 = rng.uniform(-math.pi, math.pi, 2)
        out = apply_bs(psi, SplitterParams(t1))
        norm = max(norm, abs(out.norm() - psi.norm()))
        comp = max(comp, _max_amp(apply_bs(out, SplitterParams(t2)), apply_bs(psi, SplitterParams(t1 + t2))))
        inv = max(inv, _max_amp(apply_bs(out, SplitterParams(-t1)), psi))
    yield _check("splitter_norm_preserved", norm, 1e-12)
    yield _check("splitter_composition", comp, 1e-10)
    yield _check("splitter_inverse", inv, 1e-12)


def check_thermal(rng, cutoff):
    dist = thermal_distribution(1.0, 60)
    yield _check("thermal_p0_p1_exact", max(abs(dist.probabilities[0] - 0.5), abs(dist.probabilities[1] - 0.25)), 0.0)
    mean = float(np.arange(61) @ dist.probabilities)
    # truncated mean falls short of <n> by sum_{k>60} k p_k = (61 + <n>) * tail
    yield _check("thermal_mean_within_tail", abs(mean - 1.0), (61 + 1.0) * dist.tail + 1e-15)


def check_phase_shifter(rng, cutoff):
    null = phase_scenario(math.pi / 4, 0.0, cutoff)
    lifted = phase_scenario(math.pi / 4, math.pi, cutoff)
    yield _check("phase_shifter_null_without_phase", null, 1e-20, strict=True)
    yield _check("phase_shifter_removes_null", max(0.0, 0.99 - lifted), 0.0, f"P = {lifted:.17g}")


CHECKS: tuple[Callable, ...] = (
    check_single_photon,
    check_heisenberg,
    check_bch,
    check_commutators,
    check_coherent_split,
    check_mach_zehnder,
    check_oracle_grid,
    check_general_formulas,
    check_heralding,
    check_cat,
    check_cross_method,
    check_unitarity,
    check_thermal,
    check_phase_shifter,
)


def run_verification_suite(cutoff: int = 12, seed: int = DEFAULT_SEED, flip_sign: bool = False) -> VerificationReport:
    """Run every cross-check. ``flip_sign`` runs under the wrong splitter convention."""
    rng = np.random.default_rng(seed)
    report = VerificationReport(seed=seed, cutoff=cutoff)
    start = time.perf_counter()
    if flip_sign:
        with flipped_convention():
            for check in CHECKS:
                report.results.extend(check(rng, cutoff))
    else:
        for check in CHECKS:
            report.results.extend(check(rng, cutoff))
    report.seconds = time.perf_counter() - start
    return report

import math

import numpy as np
import pytest

from fockoptics.errors import CutoffExceeded, CutoffMismatch, CutoffTooSmall
from fockoptics.fock import TwoModeState, fock_state, random_state, vacuum
from fockoptics.interferometer import (
    Circuit,
    Mirror,
    PhaseShift,
    Splitter,
    apply_phase,
    detection_distribution,
    fock_ladder_protocol,
    mach_zehnder,
    measure_mode,
    phase_scenario,
    project_mode,
    run_circuit,
    swap_modes,
    sweep_theta,
)
from fockoptics.metrics import fidelity
from fockoptics.oracle import oracle_case4, oracle_case6


def test_empty_circuit_is_identity():
    psi = random_state(4, np.random.default_rng(0))
    assert np.array_equal(run_circuit(psi, Circuit((), 4)).amps, psi.amps)


def test_mirror_is_identity():
    psi = random_state(4, np.random.default_rng(1))
    assert np.array_equal(run_circuit(psi, Circuit((Mirror("M1"), Mirror()), 4)).amps, psi.amps)


def test_circuit_rejects_foreign_element():
    with pytest.raises(TypeError):
        Circuit(("bs",), 2)
    with pytest.raises(ValueError):
        PhaseShift("c", 1.0)


def test_cutoff_mismatch():
    with pytest.raises(CutoffMismatch):
        run_circuit(vacuum(3), Circuit((), 4))


def test_two_splitters_match_case4():
    theta = 0.41
    out = run_circuit(fock_state(1, 0, 3), Circuit((Splitter(theta), Splitter(theta)), 3))
    assert fidelity(out, oracle_case4(theta, theta, 3)) >= 1 - 1e-10


def test_mz_probability_cos_squared():
    thetas = np.linspace(0, math.pi / 2, 100)
    probs = sweep_theta(fock_state(1, 0, 2), thetas, lambda t: mach_zehnder(t, t, 2))
    assert np.max(np.abs(probs - np.cos(2 * thetas) ** 2)) < 1e-12


def test_phase_shift_removes_null():
    assert phase_scenario(math.pi / 4, 0.0) < 1e-20
    for phi in (0.1, 1.0, math.pi, 4.0):
        assert phase_scenario(math.pi / 4, phi) > phase_scenario(math.pi / 4, 0.0)
    assert phase_scenario(math.pi / 4, math.pi) > 1 - 1e-12
    assert phase_scenario(math.pi / 4, 2 * math.pi) < 1e-20


def test_phase_between_eighth_splitters():
    # one-photon transfer matrix product BS diag(e^{i phi}, 1) BS
    theta, phi = math.pi / 8, math.pi
    bs = np.array([[math.cos(theta), 1j * math.sin(theta)], [1j * math.sin(theta), math.cos(theta)]])
    transfer = bs @ np.diag([np.exp(1j * phi), 1]) @ bs
    expected = abs(transfer[0, 0]) ** 2
    circuit = Circuit((Splitter(theta), PhaseShift("a", phi), Splitter(theta)), 2)
    out = run_circuit(fock_state(1, 0, 2), circuit)
    assert abs(detection_distribution(out, "a")[1][1] - expected) < 1e-12


def test_apply_phase_mode_b():
    out = apply_phase(fock_state(0, 2, 2), "b", math.pi / 2)
    assert abs(out[0, 2] + 1) < 1e-15


def test_measure_heralds_two_photons():
    state = TwoModeState.from_amplitudes({(2, 0): 1j / math.sqrt(2), (0, 2): 1j / math.sqrt(2)}, 3)
    rec = measure_mode(state, "a", 0)
    assert abs(rec.probability - 0.5) < 1e-15
    assert fidelity(rec.conditional_state, fock_state(0, 2, 3)) > 1 - 1e-15
    vec = rec.other_mode_vector()
    assert abs(abs(vec[2]) - 1) < 1e-15


def test_measure_trivial_and_impossible():
    rec = measure_mode(fock_state(1, 0, 3), "a", 1)
    assert rec.probability == 1 and rec.possible
    assert np.array_equal(rec.conditional_state.amps, fock_state(1, 0, 3).amps)
    rec = measure_mode(fock_state(1, 0, 3), "b", 3)
    assert rec.probability == 0 and not rec.possible
    with pytest.raises(ValueError):
        rec.other_mode_vector()
    with pytest.raises(CutoffExceeded):
        measure_mode(fock_state(1, 0, 3), "a", 4)


def test_detection_distribution_examples():
    dist = dict(detection_distribution(oracle_case4(math.pi / 8, math.pi / 8, 2), "a"))
    assert abs(dist[0] - 0.5) < 1e-15 and abs(dist[1] - 0.5) < 1e-15
    assert dict(detection_distribution(vacuum(2), "b")) == {0: 1.0, 1: 0.0, 2: 0.0}
    dist = dict(detection_distribution(oracle_case6(math.pi / 8, math.pi / 8, 3), "a"))
    assert abs(dist[0] - 0.5) < 1e-15 and abs(dist[2] - 0.5) < 1e-15 and dist[1] < 1e-30


def test_sum_rule_and_reconstruction():
    rng = np.random.default_rng(2)
    for _ in range(10):
        psi = random_state(6, rng)
        out = run_circuit(psi, mach_zehnder(*rng.uniform(0, 3, 2), 6))
        for mode in ("a", "b"):
            assert abs(sum(p for _, p in detection_distribution(out, mode)) - 1) < 1e-12
            total = sum(project_mode(out, mode, k).norm() ** 2 for k in range(7))
            assert abs(total - out.norm() ** 2) < 1e-12
            for k in range(7):
                rec = measure_mode(out, mode, k)
                if rec.possible:
                    assert abs(rec.conditional_state.norm() - 1) < 1e-12


def test_circuit_preserves_norm():
    psi = random_state(5, np.random.default_rng(4))
    circuit = Circuit((Splitter(0.2), Mirror(), PhaseShift("b", 0.9), Splitter(1.3)), 5)
    assert abs(run_circuit(psi, circuit).norm() - 1) < 1e-12
    assert abs(run_circuit(psi, circuit, method="analytic").norm() - 1) < 1e-12


def test_swap_modes():
    assert np.array_equal(swap_modes(fock_state(2, 1, 3)).amps, fock_state(1, 2, 3).amps)


def test_ladder_single_stage():
    res = fock_ladder_protocol(1, math.pi / 8, 4)
    assert abs(res.success_probability - 0.5) < 1e-12
    assert fidelity(res.state, fock_state(0, 2, 4)) > 1 - 1e-12
    state, prob, _ = res
    assert prob == res.success_probability


def test_ladder_decay():
    res = fock_ladder_protocol(3, math.pi / 8, 6)
    assert all(p <= 0.5 + 1e-12 for p in res.stage_probabilities)
    assert abs(res.success_probability - np.prod(res.stage_probabilities)) < 1e-15
    assert res.success_probability <= 2.0**-3 + 1e-12
    # photon count grows by one per stage with a one-photon ancilla
    assert fidelity(res.state, fock_state(0, 4, 6)) > 1 - 1e-12


def test_ladder_impossible_herald():
    res = fock_ladder_protocol(2, math.pi / 8, 6, herald=5)
    assert res.state is None and res.success_probability == 0.0


def test_ladder_cutoff_too_small():
    with pytest.raises(CutoffTooSmall):
        fock_ladder_protocol(4, math.pi / 8, 3)
    with pytest.raises(ValueError):
        fock_ladder_protocol(0, math.pi / 8, 3)

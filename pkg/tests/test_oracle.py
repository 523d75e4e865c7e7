import math

import numpy as np
import pytest

from fockoptics.fock import CatSpec, TwoModeState, cat_state, coherent_state, fock_state, product_state
from fockoptics.fock import coherent_vector
from fockoptics.interferometer import mach_zehnder, run_circuit
from fockoptics.metrics import fidelity
from fockoptics.oracle import (
    CaseId,
    mz_coefficients,
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

S = 1 / math.sqrt(2)
GRID = (0.0, math.pi / 8, math.pi / 4, math.pi / 2, math.pi)


def amps(mapping, cutoff):
    return TwoModeState.from_amplitudes(mapping, cutoff).amps


def close(x, y, tol=1e-12):
    return np.max(np.abs(np.asarray(x) - np.asarray(y))) < tol


def mz(state, t1, t2):
    return run_circuit(state, mach_zehnder(t1, t2, state.cutoff))


def test_case_parse():
    assert CaseId.parse("Case6") is CaseId.CASE6
    assert CaseId.parse("6") is CaseId.CASE6
    assert CaseId.parse("case8_cat_mz") is CaseId.CASE8
    assert CaseId.CASE1.short == "Case1"
    assert not CaseId.CASE2.two_splitters and CaseId.CASE7.two_splitters
    with pytest.raises(ValueError):
        CaseId.parse("Case3")


def test_case1_values():
    assert close(oracle_case1(math.pi / 4, 2).amps, amps({(1, 0): S, (0, 1): 1j * S}, 2))
    assert close(oracle_case1(0.0, 2).amps, fock_state(1, 0, 2).amps)
    assert close(oracle_case1(math.pi / 2, 2).amps, amps({(0, 1): 1j}, 2))


def test_case4_values():
    for theta in np.linspace(0, math.pi, 9):
        expected = amps({(1, 0): math.cos(2 * theta), (0, 1): 1j * math.sin(2 * theta)}, 2)
        assert close(oracle_case4(theta, theta, 2).amps, expected)
    assert close(oracle_case4(math.pi / 8, math.pi / 8, 2).amps, amps({(1, 0): S, (0, 1): 1j * S}, 2))
    # R1 = T2 and R2 = T1 gives no mode-a output
    out = oracle_case4(0.3, math.pi / 2 - 0.3, 2)
    assert abs(out[1, 0]) < 1e-15 and abs(abs(out[0, 1]) - 1) < 1e-15


def test_case5_values():
    assert close(oracle_case5(0.0, 0.0, 3).amps, fock_state(2, 0, 3).amps)
    assert close(oracle_case5(math.pi / 4, math.pi / 4, 3).amps, -fock_state(0, 2, 3).amps)
    half = amps({(2, 0): 0.5, (0, 2): -0.5, (1, 1): 0.5j * math.sqrt(2)}, 3)
    assert close(oracle_case5(math.pi / 8, math.pi / 8, 3).amps, half)
    for theta in GRID:
        assert close(oracle_case5(theta, theta, 3).amps, oracle_case5_equal(theta, 3).amps)


def test_case6_values():
    hom = amps({(2, 0): 1j * S, (0, 2): 1j * S}, 3)
    assert close(oracle_case6(math.pi / 8, math.pi / 8, 3).amps, hom)
    # cos(pi) = -1: the input comes back with a sign
    assert close(oracle_case6(math.pi / 4, math.pi / 4, 3).amps, -fock_state(1, 1, 3).amps)
    assert close(oracle_case6(0.0, 0.0, 3).amps, fock_state(1, 1, 3).amps)
    for theta in GRID:
        assert close(oracle_case6(theta, theta, 3).amps, oracle_case6_equal(theta, 3).amps)


def test_case7_values():
    alpha = 1.2 + 0.3j
    n = 30
    assert fidelity(oracle_case7(0.0, 0.0, alpha, n), coherent_state(alpha, "a", n)) > 1 - 1e-14
    swapped = product_state(coherent_vector(0, n), coherent_vector(1j * alpha, n))
    assert close(oracle_case7(math.pi / 4, math.pi / 4, alpha, n).amps, swapped.amps)
    split = product_state(coherent_vector(alpha * S, n), coherent_vector(1j * alpha * S, n))
    assert close(oracle_case7(math.pi / 8, math.pi / 8, alpha, n).amps, split.amps)


def test_case8_values():
    n = 30
    for sign in (1, -1):
        cat = CatSpec(2.0, -2.0, sign)
        zero = oracle_case8(0.0, 0.0, cat, n)
        assert close(zero.amps, cat_state(cat, "a", n)[0].amps)
        rotated = oracle_case8(math.pi / 4, math.pi / 4, cat, n)
        assert np.max(np.abs(rotated.amps[1:, :])) < 1e-15
        mixed = oracle_case8(math.pi / 8, math.pi / 8, cat, n)
        branch = lambda x: np.outer(coherent_vector(x * S, n), coherent_vector(1j * x * S, n))
        expected = branch(2.0) + sign * branch(-2.0)
        expected /= np.linalg.norm(expected)
        assert close(mixed.amps, expected, 1e-12)


def test_oracles_unit_norm():
    rng = np.random.default_rng(11)
    for _ in range(20):
        t1, t2 = rng.uniform(-math.pi, math.pi, 2)
        for state in (
            oracle_case1(t1, 3),
            oracle_case2(t1, 1 + 1j, 30),
            oracle_case4(t1, t2, 3),
            oracle_case5(t1, t2, 3),
            oracle_case6(t1, t2, 3),
            oracle_case7(t1, t2, 1.5, 30),
            oracle_case8(t1, t2, CatSpec(2.0, -2.0, -1), 30),
        ):
            assert abs(state.norm() - 1) < 1e-12


def test_mz_coefficients_equal_angles():
    for theta in np.linspace(-2, 2, 11):
        tr, rf = mz_coefficients(theta, theta)
        assert abs(tr - math.cos(2 * theta)) < 1e-15 and abs(rf - math.sin(2 * theta)) < 1e-15


def test_general_formulas_against_engine():
    rng = np.random.default_rng(5)
    for _ in range(50):
        t1, t2 = rng.uniform(-math.pi, math.pi, 2)
        out5 = mz(fock_state(2, 0, 3), t1, t2)
        out6 = mz(fock_state(1, 1, 3), t1, t2)
        assert fidelity(out5, oracle_case5(t1, t2, 3)) >= 1 - 1e-10
        assert fidelity(out6, oracle_case6(t1, t2, 3)) >= 1 - 1e-10
        # literal phases too
        assert close(out5.amps, oracle_case5(t1, t2, 3).amps, 1e-12)
        assert close(out6.amps, oracle_case6(t1, t2, 3).amps, 1e-12)


def test_engine_grid_literal_phases():
    for theta in GRID:
        assert close(mz(fock_state(1, 0, 3), theta, theta).amps, oracle_case4(theta, theta, 3).amps)
        out = run_circuit(coherent_state(2.0, "a", 30), mach_zehnder(theta, theta, 30))
        ref = oracle_case7(theta, theta, 2.0, 30)
        assert fidelity(out, ref) >= 1 - 1e-12
        # the product oracle also fills n + m > cutoff, which the engine leaves empty
        assert close(out.amps, ref.amps, 1e-8)

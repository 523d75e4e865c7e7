import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fockoptics.errors import CutoffExceeded, CutoffMismatch, CutoffTooSmall, ZeroState
from fockoptics.fock import (
    CatSpec,
    CoherentSpec,
    TwoModeState,
    cat_state,
    coherent_amplitudes,
    coherent_state,
    fock_state,
    inner_product,
    normalize,
    poisson_tail,
    random_state,
    required_cutoff,
    vacuum,
)


def test_fock_state_single_entry():
    psi = fock_state(1, 0, 4)
    expected = np.zeros((5, 5))
    expected[1, 0] = 1
    assert np.array_equal(psi.amps, expected)
    assert psi.dim == 25


def test_vacuum_norm():
    assert vacuum(4).norm() == 1.0
    assert vacuum(4)[0, 0] == 1


def test_fock_state_above_cutoff():
    with pytest.raises(CutoffExceeded):
        fock_state(5, 0, 4)


def test_cutoff_must_be_positive():
    with pytest.raises(ValueError):
        fock_state(0, 0, 0)


def test_amplitudes_read_only():
    psi = fock_state(1, 0, 2)
    with pytest.raises(ValueError):
        psi.amps[0, 0] = 1


def test_fock_states_orthonormal():
    cutoff = 3
    basis = [fock_state(n, m, cutoff) for n in range(4) for m in range(4)]
    gram = np.array([[inner_product(x, y) for y in basis] for x in basis])
    assert np.array_equal(gram, np.eye(16))


def test_coherent_zero_is_vacuum():
    assert np.allclose(coherent_state(0, "a", 4).amps, vacuum(4).amps, atol=0)


def test_coherent_mean_photon_number():
    psi = coherent_state(1.0, "a", 30)
    n = np.arange(31)
    mean = float(n @ np.abs(psi.amps[:, 0]) ** 2)
    # direct Poisson sum
    ref = sum(k * math.exp(-1) / math.factorial(k) for k in range(60))
    assert abs(mean - ref) < 1e-10


def test_coherent_cutoff_too_small_reports_requirement():
    with pytest.raises(CutoffTooSmall) as info:
        coherent_state(2.0, "a", 4)
    # direct-summation tail oracle
    tail = 1 - sum(math.exp(-4) * 4**k / math.factorial(k) for k in range(5))
    assert tail > 1e-12
    req = info.value.required
    assert 1 - sum(math.exp(-4) * 4**k / math.factorial(k) for k in range(req + 1)) <= 1e-12 + 1e-15
    coherent_state(2.0, "a", req)


def test_coherent_on_mode_b():
    psi = coherent_state(0.5, "b", 12)
    assert np.count_nonzero(psi.amps[1:, :]) == 0


def test_coherent_amplitudes_are_poisson():
    alpha = 1.3 - 0.4j
    c = coherent_amplitudes(alpha, 25)
    mean = abs(alpha) ** 2
    poisson = np.array([math.exp(-mean) * mean**k / math.factorial(k) for k in range(26)])
    assert np.max(np.abs(np.abs(c) ** 2 - poisson)) < 1e-12


def test_required_cutoff_matches_tail():
    for mean in (0.5, 1.0, 4.0, 8.0):
        n = required_cutoff(mean)
        assert poisson_tail(mean, n) <= 1e-12
        assert n == 1 or poisson_tail(mean, n - 1) > 1e-12


def test_cat_equal_components_is_coherent():
    cat, _ = cat_state(CatSpec(1.0, 1.0, 1), "a", 30)
    coh = coherent_state(1.0, "a", 30)
    assert abs(abs(inner_product(cat, coh)) ** 2 - 1) < 1e-12


def test_odd_cat_parity():
    cat, _ = cat_state(CatSpec(1.0, -1.0, -1), "a", 30)
    assert np.max(np.abs(cat.amps[0::2, 0])) < 1e-12
    assert abs(cat.norm() - 1) < 1e-12


def test_cat_eta():
    _, spec = cat_state(CatSpec(1.0, -1.0, 1), "a", 30)
    assert abs(spec.eta - (2 + 2 * math.exp(-2)) ** -0.5) < 1e-10


def test_cat_zero_superposition():
    with pytest.raises(ZeroState):
        cat_state(CatSpec(1.0, 1.0, -1), "a", 30)


def test_cat_spec_rejects_bad_sign():
    with pytest.raises(ValueError):
        CatSpec(1.0, -1.0, 0)
    with pytest.raises(ValueError):
        CoherentSpec(1.0, truncation_tail=0.0)


def test_inner_products():
    assert inner_product(fock_state(1, 0, 2), fock_state(1, 0, 2)) == 1
    assert inner_product(fock_state(1, 0, 2), fock_state(0, 1, 2)) == 0
    coh = coherent_state(CoherentSpec(1.0, truncation_tail=1e-16), "a", 30)
    assert abs(inner_product(coh, vacuum(30)) - math.exp(-0.5)) < 1e-10


def test_inner_product_cutoff_mismatch():
    with pytest.raises(CutoffMismatch):
        inner_product(vacuum(2), vacuum(3))


def test_normalize_examples():
    two = fock_state(1, 0, 2) * 2
    assert np.array_equal(normalize(two).amps, fock_state(1, 0, 2).amps)
    with pytest.raises(ZeroState):
        normalize(TwoModeState(np.zeros((3, 3))))
    phased = normalize(fock_state(0, 1, 2) * (1 + 1j))
    assert abs(phased[0, 1] - (1 + 1j) / math.sqrt(2)) < 1e-15


def test_from_amplitudes_and_support():
    psi = TwoModeState.from_amplitudes({(2, 0): 0.6, (0, 2): 0.8j}, 3)
    assert dict(psi.support()) == {(2, 0): 0.6, (0, 2): 0.8j}
    with pytest.raises(CutoffExceeded):
        TwoModeState.from_amplitudes({(4, 0): 1}, 3)


def test_vector_round_trip():
    rng = np.random.default_rng(3)
    psi = random_state(5, rng)
    back = TwoModeState.from_vector(psi.vector(), 5)
    assert np.array_equal(back.amps, psi.amps)
    # flat index n*(n_max+1)+m
    assert psi.vector()[2 * 6 + 1] == psi[2, 1]


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_normalize_idempotent(cutoff, seed):
    psi = TwoModeState(np.random.default_rng(seed).normal(size=(cutoff + 1, cutoff + 1)) + 0j)
    once = normalize(psi)
    assert abs(once.norm() - 1) < 1e-12
    assert np.max(np.abs(normalize(once).amps - once.amps)) <= 1e-15

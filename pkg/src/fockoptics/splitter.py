"""Lossless beam splitter acting on two-mode states.

Conventions: the splitter with mixing angle ``theta`` has ``T = cos(theta)``,
``R = sin(theta)`` and transforms creation operators as

    S adag S^dag = T adag + i R bdag,
    S bdag S^dag = T bdag + i R adag.

This fixes every output phase below. Written as ``exp(-i s theta G)`` with
``G = a bdag + adag b``, the transform above needs ``s = -1``; the numeric
path finds the sign once with a self-test on the one-photon block instead
of hard-coding it (see :func:`generator_sign`).

Two independent routes are provided. :func:`apply_bs_analytic` expands
``(T adag + i R bdag)^n (T bdag + i R adag)^m |0,0>`` per basis ket;
:func:`apply_bs_numeric` exponentiates ``G`` block by block in total photon
number. Both act only on the blocks ``N <= n_max``, which the per-mode
cutoff holds completely; weight on higher blocks would be pushed out of the
basis, so it must be negligible (``leak_tol``) and is then discarded.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CutoffTooSmall
from .fock import Mode, TwoModeState, check_cutoff, check_mode
from .operators import (
    TwoModeOperator,
    annihilation_matrix,
    bs_hamiltonian,
    creation_matrix,
    interior_mask,
    on_mode,
    photon_blocks,
)

# double-precision factorials overflow past 170!
MAX_ANALYTIC_CUTOFF = 170

LEAK_TOL = 1e-12


@dataclass(frozen=True)
class SplitterParams:
    """Mixing angle ``theta`` (radians); the product of coupling and transit time."""

    theta: float

    def __post_init__(self):
        theta = float(self.theta)
        if not math.isfinite(theta):
            raise ValueError("theta must be finite")
        object.__setattr__(self, "theta", theta)

    @property
    def t(self) -> float:
        return math.cos(self.theta)

    @property
    def r(self) -> float:
        return math.sin(self.theta)


def _params(p) -> SplitterParams:
    return p if isinstance(p, SplitterParams) else SplitterParams(p)


def scattering_matrix(params: SplitterParams) -> np.ndarray:
    """``[[T, iR], [iR, T]]``: maps input annihilation operators to output ones."""
    params = _params(params)
    t, r = params.t, params.r
    return np.array([[t, 1j * r], [1j * r, t]])


def inverse_scattering_matrix(params: SplitterParams) -> np.ndarray:
    params = _params(params)
    t, r = params.t, params.r
    return np.array([[t, -1j * r], [-1j * r, t]])


def scattering_roundtrip(params: SplitterParams) -> float:
    """Max deviation of inverse @ forward from the identity."""
    params = _params(params)
    prod = inverse_scattering_matrix(params) @ scattering_matrix(params)
    return float(np.max(np.abs(prod - np.eye(2))))


# --- analytic route -------------------------------------------------------

@lru_cache(maxsize=None)
def _sqrt_factorials(n_max: int) -> np.ndarray:
    return np.sqrt(np.array([float(math.factorial(k)) for k in range(n_max + 1)]))


def analytic_block(big_n: int, params: SplitterParams) -> np.ndarray:
    """Transfer matrix of the N-photon block by binomial expansion.

    Column ``n`` is the image of ``|n, N-n>``; row ``p`` the amplitude on
    ``|p, N-p>``.
    """
    if big_n > MAX_ANALYTIC_CUTOFF:
        raise CutoffTooSmall(f"analytic expansion is limited to N <= {MAX_ANALYTIC_CUTOFF}")
    t, ir = params.t, 1j * params.r
    sf = _sqrt_factorials(big_n)
    out = np.zeros((big_n + 1, big_n + 1), dtype=np.complex128)
    for n in range(big_n + 1):
        m = big_n - n
        norm = sf[n] * sf[m]
        for j in range(n + 1):
            # (T adag + iR bdag)^n -> adag^j bdag^(n-j)
            cj = math.comb(n, j) * t**j * ir ** (n - j)
            for k in range(m + 1):
                # (T bdag + iR adag)^m -> bdag^k adag^(m-k)
                p = j + m - k
                q = big_n - p
                ck = math.comb(m, k) * t**k * ir ** (m - k)
                out[p, n] += cj * ck * sf[p] * sf[q] / norm
    return out


def apply_bs_analytic(state: TwoModeState, params: SplitterParams, leak_tol: float = LEAK_TOL) -> TwoModeState:
    """Beam splitter by double binomial expansion of every basis ket."""
    params = _params(params)
    n_max = state.cutoff
    if n_max > MAX_ANALYTIC_CUTOFF:
        raise CutoffTooSmall(f"analytic expansion supports cutoff <= {MAX_ANALYTIC_CUTOFF}")
    vec = _checked_vector(state, leak_tol)
    out = np.zeros_like(vec)
    blocks = photon_blocks(n_max)
    for big_n in range(n_max + 1):
        idx = blocks[big_n]
        block = vec[idx]
        if not block.any():
            continue
        out[idx] = analytic_block(big_n, params) @ block
    return TwoModeState.from_vector(out, n_max)


# --- numeric route --------------------------------------------------------

@lru_cache(maxsize=256)
def _block_eigh(big_n: int) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of the tridiagonal N-photon block of ``a bdag + adag b``."""
    n = np.arange(1, big_n + 1)
    # <n-1, N-n+1| a bdag |n, N-n> = sqrt(n (N-n+1))
    off = np.sqrt(n * (big_n - n + 1.0))
    h = np.diag(off, 1) + np.diag(off, -1)
    w, v = np.linalg.eigh(h)
    w.setflags(write=False)
    v.setflags(write=False)
    return w, v


def _exp_block(big_n: int, theta: float, sign: int) -> np.ndarray:
    if theta == 0:
        return np.eye(big_n + 1, dtype=np.complex128)
    w, v = _block_eigh(big_n)
    return (v * np.exp(-1j * sign * theta * w)) @ v.T


@lru_cache(maxsize=1)
def generator_sign() -> int:
    """Sign ``s`` in ``exp(-i s theta G)`` reproducing ``S adag S^dag = T adag + i R bdag``.

    Checked on the one-photon block, where the transform demands
    ``S|1,0> = T|1,0> + iR|0,1>``.
    """
    theta = 0.3
    u = _exp_block(1, theta, +1)
    # block basis is (|0,1>, |1,0>); image of |1,0> is column 1
    target = np.array([1j * math.sin(theta), math.cos(theta)])
    if np.allclose(u[:, 1], target, atol=1e-14):
        return 1
    if np.allclose(_exp_block(1, theta, -1)[:, 1], target, atol=1e-14):
        return -1
    raise RuntimeError("no generator sign reproduces the splitter transform")


_sign_override: int | None = None


def current_sign() -> int:
    return generator_sign() if _sign_override is None else _sign_override


@contextmanager
def flipped_convention():
    """Test hook: run the numeric route with the wrong generator sign.

    Process-global; not for use from concurrent threads.
    """
    global _sign_override
    previous = _sign_override
    _sign_override = -generator_sign()
    try:
        yield
    finally:
        _sign_override = previous


def apply_bs_numeric(
    state: TwoModeState, params: SplitterParams, leak_tol: float = LEAK_TOL, sign: int | None = None
) -> TwoModeState:
    """Beam splitter by exponentiating each total-photon-number block.

    ``sign`` overrides the calibrated generator sign; it exists to let tests
    confirm that the wrong convention is caught.
    """
    params = _params(params)
    sign = current_sign() if sign is None else sign
    n_max = state.cutoff
    vec = _checked_vector(state, leak_tol)
    out = np.zeros_like(vec)
    blocks = photon_blocks(n_max)
    for big_n in range(n_max + 1):
        idx = blocks[big_n]
        block = vec[idx]
        if not block.any():
            continue
        out[idx] = _exp_block(big_n, params.theta, sign) @ block
    return TwoModeState.from_vector(out, n_max)


def apply_bs(state: TwoModeState, params: SplitterParams, method: str = "numeric", **kw) -> TwoModeState:
    if method == "numeric":
        return apply_bs_numeric(state, params, **kw)
    if method == "analytic":
        return apply_bs_analytic(state, params, **kw)
    raise ValueError(f"unknown method {method!r}")


def _checked_vector(state: TwoModeState, leak_tol: float) -> np.ndarray:
    n_max = state.cutoff
    vec = state.vector().copy()
    blocks = photon_blocks(n_max)
    high = np.concatenate(blocks[n_max + 1:])
    leak = float(np.sum(np.abs(vec[high]) ** 2))
    if leak > leak_tol:
        weights = [float(np.sum(np.abs(vec[b]) ** 2)) for b in blocks]
        need = max(k for k, w in enumerate(weights) if w > 0)
        raise CutoffTooSmall(
            f"state has weight {leak:.3g} on total photon numbers above the cutoff {n_max}; "
            f"a splitter would move it out of the basis (need n_max >= {need})",
            required=need,
        )
    vec[high] = 0
    return vec


# --- operator level -------------------------------------------------------

def bs_unitary(params: SplitterParams, cutoff: int, sign: int | None = None) -> TwoModeOperator:
    """Full splitter matrix on the two-mode space.

    Blocks above the cutoff use the truncated generator; they are unitary
    but not the physical splitter, and only matter outside the interior.
    """
    params = _params(params)
    n_max = check_cutoff(cutoff)
    sign = current_sign() if sign is None else sign
    g = bs_hamiltonian(n_max).matrix
    d = (n_max + 1) ** 2
    u = np.zeros((d, d), dtype=np.complex128)
    for big_n, idx in enumerate(photon_blocks(n_max)):
        if big_n <= n_max:
            u[np.ix_(idx, idx)] = _exp_block(big_n, params.theta, sign)
        else:
            w, v = np.linalg.eigh(g[np.ix_(idx, idx)].real)
            u[np.ix_(idx, idx)] = (v * np.exp(-1j * sign * params.theta * w)) @ v.T
    return TwoModeOperator(u, f"S({params.theta:g})")


def _other(mode: Mode) -> Mode:
    return "b" if mode == "a" else "a"


def heisenberg_conjugate_creation(params: SplitterParams, mode: Mode, cutoff: int) -> TwoModeOperator:
    """``S adag_mode S^dag`` by explicit matrix products."""
    params = _params(params)
    check_mode(mode)
    s = bs_unitary(params, cutoff).matrix
    ad = on_mode(creation_matrix(cutoff), mode).matrix
    return TwoModeOperator(s @ ad @ s.conj().T, f"S adag_{mode} S^dag")


def heisenberg_output_annihilation(params: SplitterParams, mode: Mode, cutoff: int) -> TwoModeOperator:
    """Output-mode annihilation operator ``S^dag a_mode S``; exact on columns with N <= n_max."""
    params = _params(params)
    check_mode(mode)
    s = bs_unitary(params, cutoff).matrix
    a = on_mode(annihilation_matrix(cutoff), mode).matrix
    return TwoModeOperator(s.conj().T @ a @ s, f"S^dag a_{mode} S")


def expected_conjugate_creation(params: SplitterParams, mode: Mode, cutoff: int) -> np.ndarray:
    """``T adag_mode + i R adag_other``."""
    params = _params(params)
    ad = creation_matrix(cutoff)
    return params.t * on_mode(ad, mode).matrix + 1j * params.r * on_mode(ad, _other(mode)).matrix


def interior_deviation(x: np.ndarray, y: np.ndarray, cutoff: int) -> float:
    """Max entry-wise difference restricted to interior columns."""
    mask = interior_mask(cutoff)
    return float(np.max(np.abs((x - y)[:, mask])))


def heisenberg_deviation(params: SplitterParams, mode: Mode, cutoff: int) -> float:
    conj = heisenberg_conjugate_creation(params, mode, cutoff).matrix
    return interior_deviation(conj, expected_conjugate_creation(params, mode, cutoff), cutoff)


def _monomial_ladder(cutoff: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Integer matrices of ``adag_a``, ``adag_b`` and ``G`` in the monomial basis.

    The basis vector ``e[n, m] = adag^n bdag^m |0,0>`` equals
    ``sqrt(n! m!) |n, m>``. There ``adag e[n, m] = e[n+1, m]`` and
    ``a e[n, m] = n e[n-1, m]``, so every ladder matrix is integral.
    """
    n_max = check_cutoff(cutoff)
    d = n_max + 1
    up = np.diag(np.ones(n_max, dtype=np.int64), -1)
    down = np.diag(np.arange(1, d, dtype=np.int64), 1)
    eye = np.eye(d, dtype=np.int64)
    ad_a, ad_b = np.kron(up, eye), np.kron(eye, up)
    g = np.kron(down, up) + np.kron(up, down)
    return ad_a, ad_b, g


def _monomial_scale(cutoff: int) -> np.ndarray:
    """``sqrt(n! m!)`` per flattened basis index."""
    sf = _sqrt_factorials(cutoff)
    return np.outer(sf, sf).reshape(-1)


def nested_commutators(order: int, cutoff: int) -> list[np.ndarray]:
    """``[G, [G, ... adag_a]]`` for nesting depth 0 .. order, on interior columns.

    Computed exactly in integer arithmetic in the monomial basis: in floating
    point the map ``X -> [G, X]`` amplifies rounding by up to ``2 n_max`` per
    level. Restricting to interior columns is closed because ``G`` keeps each
    column in its own photon-number block. Returned matrices have shape
    ``(d, n_interior)`` and are converted to the normalized Fock basis.
    """
    ad_a, _, g = _monomial_ladder(cutoff)
    mask = interior_mask(cutoff)
    g_in = g[np.ix_(mask, mask)]
    scale = _monomial_scale(cutoff)
    to_fock = scale[:, None] / scale[mask][None, :]
    term = ad_a[:, mask]
    out = [term * to_fock]
    for _ in range(order):
        term = g @ term - term @ g_in
        out.append(term * to_fock)
    return out


def bch_series(params: SplitterParams, order: int, cutoff: int) -> np.ndarray:
    """Partial sum ``sum_k (i chi)^k / k! [G, [G, ... adag]]`` up to ``order``.

    With the calibrated sign, ``S = exp(i chi G)``, so this series converges
    to ``S adag S^dag``. Only interior columns are returned.
    """
    params = _params(params)
    if order < 1:
        raise ValueError("order must be >= 1")
    chi = -current_sign() * params.theta
    terms = nested_commutators(order, cutoff)
    total = np.zeros(terms[0].shape, dtype=np.complex128)
    coef = 1.0 + 0j
    for k, term in enumerate(terms):
        if k:
            coef *= 1j * chi / k
        total += coef * term
    return total


def bch_series_check(params: SplitterParams, order: int, cutoff: int) -> float:
    """Max interior deviation between the order-truncated series and exact conjugation."""
    series = bch_series(params, order, cutoff)
    exact = heisenberg_conjugate_creation(params, "a", cutoff).matrix[:, interior_mask(cutoff)]
    return float(np.max(np.abs(series - exact)))

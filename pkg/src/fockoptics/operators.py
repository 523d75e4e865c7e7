"""Dense operator matrices on the truncated single- and two-mode bases."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CutoffMismatch, CutoffTooSmall
from .fock import Mode, check_cutoff, check_mode, poisson_tail, required_cutoff


@dataclass(frozen=True, eq=False)
class ModeOperator:
    """Operator on one mode; ``matrix`` is (n_max+1) x (n_max+1)."""

    matrix: np.ndarray
    label: str = ""

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"operator must be square, got shape {mat.shape}")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def cutoff(self) -> int:
        return self.matrix.shape[0] - 1

    def __matmul__(self, other):
        if isinstance(other, ModeOperator):
            if other.cutoff != self.cutoff:
                raise CutoffMismatch("operators on different cutoffs")
            return ModeOperator(self.matrix @ other.matrix, f"{self.label}*{other.label}")
        return self.matrix @ other

    @property
    def dag(self) -> ModeOperator:
        return ModeOperator(self.matrix.conj().T, f"{self.label}^dag")


@dataclass(frozen=True, eq=False)
class TwoModeOperator:
    """Operator on modes a and b; row/column index is ``n * (n_max + 1) + m``."""

    matrix: np.ndarray
    label: str = ""

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=np.complex128)
        d = int(round(np.sqrt(mat.shape[0])))
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or d * d != mat.shape[0]:
            raise ValueError(f"two-mode operator must be (d^2, d^2), got {mat.shape}")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def cutoff(self) -> int:
        return int(round(np.sqrt(self.matrix.shape[0]))) - 1

    def __matmul__(self, other):
        if isinstance(other, TwoModeOperator):
            if other.cutoff != self.cutoff:
                raise CutoffMismatch("operators on different cutoffs")
            return TwoModeOperator(self.matrix @ other.matrix, f"{self.label}*{other.label}")
        return self.matrix @ other

    @property
    def dag(self) -> TwoModeOperator:
        return TwoModeOperator(self.matrix.conj().T, f"{self.label}^dag")


def creation_matrix(cutoff: int) -> ModeOperator:
    n_max = check_cutoff(cutoff)
    return ModeOperator(np.diag(np.sqrt(np.arange(1, n_max + 1)), k=-1), "adag")


def annihilation_matrix(cutoff: int) -> ModeOperator:
    return creation_matrix(cutoff).dag


def number_matrix(cutoff: int) -> ModeOperator:
    n_max = check_cutoff(cutoff)
    return ModeOperator(np.diag(np.arange(n_max + 1)), "n")


def phase_matrix(phi: float, cutoff: int) -> ModeOperator:
    """Phase shifter ``exp(i phi n)``."""
    n_max = check_cutoff(cutoff)
    return ModeOperator(np.diag(np.exp(1j * phi * np.arange(n_max + 1))), f"phase({phi:g})")


def _expm_antihermitian(hermitian: np.ndarray, scale: float) -> np.ndarray:
    """``exp(i * scale * H)`` for Hermitian ``H`` via its eigendecomposition."""
    w, v = np.linalg.eigh(hermitian)
    return (v * np.exp(1j * scale * w)) @ v.conj().T


def displacement_matrix(alpha: complex, cutoff: int, tail: float = 1e-10) -> ModeOperator:
    """``D(alpha) = exp(alpha adag - conj(alpha) a)`` cropped to the cutoff.

    The exponential is taken on a padded basis and then cropped, so column 0
    reproduces the coherent amplitudes up to the truncation tail. The crop is
    unitary only on the interior block whose displaced kets fit the cutoff.
    """
    n_max = check_cutoff(cutoff)
    alpha = complex(alpha)
    mean = abs(alpha) ** 2
    if poisson_tail(mean, n_max) > tail:
        need = required_cutoff(mean, tail)
        raise CutoffTooSmall(f"displacement by |alpha|^2={mean:g} needs n_max >= {need}", required=need)
    if alpha == 0:
        return ModeOperator(np.eye(n_max + 1), "D(0)")
    # a Fock ket |n> is spread by D over roughly n +- several |alpha| sqrt(n)
    pad = n_max + 4 * int(np.ceil(abs(alpha) * np.sqrt(n_max + 1))) + 40
    big = creation_matrix(pad).matrix
    # alpha adag - conj(alpha) a = i * H with H Hermitian
    herm = -1j * (alpha * big - np.conj(alpha) * big.conj().T)
    full = _expm_antihermitian(herm, 1.0)
    return ModeOperator(full[: n_max + 1, : n_max + 1], f"D({alpha:g})")


def on_mode(op: ModeOperator, mode: Mode) -> TwoModeOperator:
    """Lift a single-mode operator to the two-mode space."""
    eye = np.eye(op.cutoff + 1)
    if check_mode(mode) == "a":
        mat = np.kron(op.matrix, eye)
    else:
        mat = np.kron(eye, op.matrix)
    return TwoModeOperator(mat, f"{op.label}_{mode}")


def bs_hamiltonian(cutoff: int) -> TwoModeOperator:
    """Dimensionless beam-splitter generator ``a bdag + adag b``."""
    ad = creation_matrix(cutoff).matrix
    a = ad.T
    mat = np.kron(a, ad) + np.kron(ad, a)
    return TwoModeOperator(mat, "a bdag + adag b")


def total_number(cutoff: int) -> np.ndarray:
    """Total photon number ``n + m`` of every flattened basis index."""
    n = np.arange(check_cutoff(cutoff) + 1)
    return np.add.outer(n, n).reshape(-1)


@lru_cache(maxsize=64)
def photon_blocks(cutoff: int) -> tuple[np.ndarray, ...]:
    """Flattened basis indices grouped by total photon number N = 0 .. 2 n_max.

    Blocks with N <= n_max hold every ket of that N; higher blocks are cut by
    the per-mode cutoff. Each index array is ordered by increasing n.
    """
    tot = total_number(cutoff)
    blocks = []
    for big_n in range(2 * cutoff + 1):
        idx = np.flatnonzero(tot == big_n)
        idx.setflags(write=False)
        blocks.append(idx)
    return tuple(blocks)


def interior_mask(cutoff: int) -> np.ndarray:
    """Basis indices with total photon number <= n_max - 1.

    On these columns a single creation operator, followed by any
    number-conserving operator, is free of truncation error.
    """
    return total_number(cutoff) <= cutoff - 1

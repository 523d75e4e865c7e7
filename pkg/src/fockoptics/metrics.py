"""Photon statistics, state overlaps and bipartite entanglement."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .fock import Mode, TwoModeState, check_cutoff, inner_product
from .interferometer import detection_distribution

# singular values below this are treated as zero in the entropy
SCHMIDT_FLOOR = 1e-12


@dataclass(frozen=True)
class PhotonStats:
    """Mean, variance and Mandel Q of one mode's photon count.

    Q is set to 0 and ``vacuum`` flagged when the mean vanishes.
    """

    mean: float
    variance: float
    mandel_q: float
    vacuum: bool = False


def photon_stats(state: TwoModeState, mode: Mode) -> PhotonStats:
    dist = np.array([p for _, p in detection_distribution(state, mode)])
    n = np.arange(dist.size)
    total = dist.sum()
    mean = float(n @ dist / total)
    variance = float(max((n - mean) ** 2 @ dist / total, 0.0))
    if mean <= 1e-15:
        return PhotonStats(0.0, variance, 0.0, vacuum=True)
    return PhotonStats(mean, variance, (variance - mean) / mean)


def total_mean_photons(state: TwoModeState) -> float:
    n = np.arange(state.cutoff + 1)
    weights = np.abs(state.amps) ** 2
    return float(np.add.outer(n, n).ravel() @ weights.ravel())


class ThermalDistribution(NamedTuple):
    probabilities: np.ndarray
    tail: float


def thermal_distribution(mean_n: float, cutoff: int) -> ThermalDistribution:
    """Bose-Einstein count distribution ``<n>^k / (1 + <n>)^(k+1)`` for k <= cutoff.

    ``tail`` is the probability above the cutoff, ``(<n>/(1+<n>))^(cutoff+1)``.
    """
    if not mean_n > 0:
        raise ValueError("mean_n must be positive")
    n_max = check_cutoff(cutoff)
    k = np.arange(n_max + 1)
    probs = mean_n**k / (1.0 + mean_n) ** (k + 1)
    tail = (mean_n / (1.0 + mean_n)) ** (n_max + 1)
    return ThermalDistribution(probs, float(tail))


def fidelity(x: TwoModeState, y: TwoModeState) -> float:
    """``|<x|y>|^2``; insensitive to global phase."""
    return abs(inner_product(x, y)) ** 2


def coherent_overlap(alpha: complex, beta: complex) -> complex:
    """``<alpha|beta> = exp(-(|alpha|^2 + |beta|^2)/2 + conj(alpha) beta)``."""
    alpha, beta = complex(alpha), complex(beta)
    return cmath.exp(-(abs(alpha) ** 2 + abs(beta) ** 2) / 2 + alpha.conjugate() * beta)


@dataclass(frozen=True)
class SchmidtReport:
    coefficients: np.ndarray
    entropy_bits: float

    @property
    def rank(self) -> int:
        return int(np.count_nonzero(self.coefficients > SCHMIDT_FLOOR))


def schmidt_decompose(state: TwoModeState) -> SchmidtReport:
    """Schmidt coefficients (singular values of ``amps``) and entanglement entropy in bits."""
    sv = np.linalg.svd(state.amps, compute_uv=False)
    kept = sv[sv > SCHMIDT_FLOOR]
    p = kept**2
    entropy = float(-(p * np.log2(p)).sum()) if p.size else 0.0
    return SchmidtReport(sv, max(entropy, 0.0))

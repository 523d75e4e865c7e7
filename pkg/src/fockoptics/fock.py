"""Two-mode states on a truncated Fock basis.

A state stores one complex amplitude per basis ket ``|n>_a |m>_b`` with
``0 <= n, m <= n_max``; ``amps[n, m]`` is the amplitude of that ket.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Literal, Mapping

import numpy as np
from scipy.stats import poisson

from .errors import CutoffExceeded, CutoffMismatch, CutoffTooSmall, ZeroState

Mode = Literal["a", "b"]

DEFAULT_TAIL = 1e-12


def check_cutoff(n_max: int) -> int:
    n_max = int(n_max)
    if n_max < 1:
        raise ValueError(f"cutoff must be >= 1, got {n_max}")
    return n_max


def check_mode(mode: str) -> str:
    if mode not in ("a", "b"):
        raise ValueError(f"mode must be 'a' or 'b', got {mode!r}")
    return mode


@dataclass(frozen=True, eq=False)
class TwoModeState:
    """Pure state of modes a and b, amplitudes indexed ``[n_a, n_b]``.

    The amplitude array is copied on construction and made read-only.
    """

    amps: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amps, dtype=np.complex128)
        if amps.ndim != 2 or amps.shape[0] != amps.shape[1]:
            raise ValueError(f"amplitudes must be a square matrix, got shape {amps.shape}")
        check_cutoff(amps.shape[0] - 1)
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def cutoff(self) -> int:
        return self.amps.shape[0] - 1

    @property
    def dim(self) -> int:
        return self.amps.size

    def __getitem__(self, index):
        return self.amps[index]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def vector(self) -> np.ndarray:
        """Flattened amplitudes; basis index is ``n * (n_max + 1) + m``."""
        return self.amps.reshape(-1)

    @classmethod
    def from_vector(cls, vec, cutoff: int) -> TwoModeState:
        d = check_cutoff(cutoff) + 1
        return cls(np.asarray(vec).reshape(d, d))

    @classmethod
    def from_amplitudes(cls, amplitudes: Mapping[tuple[int, int], complex], cutoff: int) -> TwoModeState:
        """Build a state from ``{(n, m): amplitude}``; unlisted kets get zero."""
        n_max = check_cutoff(cutoff)
        amps = np.zeros((n_max + 1, n_max + 1), dtype=np.complex128)
        for (n, m), c in amplitudes.items():
            if n > n_max or m > n_max or n < 0 or m < 0:
                raise CutoffExceeded(f"ket |{n},{m}> outside cutoff {n_max}")
            amps[n, m] += c
        return cls(amps)

    def support(self, tol: float = 1e-12) -> list[tuple[tuple[int, int], complex]]:
        """Kets whose amplitude modulus exceeds ``tol``, ordered by (n, m)."""
        idx = np.argwhere(np.abs(self.amps) > tol)
        return [((int(n), int(m)), complex(self.amps[n, m])) for n, m in idx]

    def __add__(self, other: TwoModeState) -> TwoModeState:
        _same_cutoff(self, other)
        return TwoModeState(self.amps + other.amps)

    def __sub__(self, other: TwoModeState) -> TwoModeState:
        _same_cutoff(self, other)
        return TwoModeState(self.amps - other.amps)

    def __mul__(self, scalar) -> TwoModeState:
        return TwoModeState(self.amps * complex(scalar))

    __rmul__ = __mul__

    def __repr__(self):
        terms = " + ".join(f"({c:.6g})|{n},{m}>" for (n, m), c in self.support()[:6])
        more = "" if len(self.support()) <= 6 else " + ..."
        return f"TwoModeState(cutoff={self.cutoff}, {terms or '0'}{more})"


@dataclass(frozen=True)
class CoherentSpec:
    alpha: complex
    truncation_tail: float = DEFAULT_TAIL

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        if not 0.0 < self.truncation_tail < 1.0:
            raise ValueError("truncation_tail must lie in (0, 1)")


@dataclass(frozen=True)
class CatSpec:
    """Superposition ``eta (|alpha> + sign |beta>)``; ``eta`` is filled in by :func:`cat_state`."""

    alpha: complex
    beta: complex
    sign: int = 1
    truncation_tail: float = DEFAULT_TAIL
    eta: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if not 0.0 < self.truncation_tail < 1.0:
            raise ValueError("truncation_tail must lie in (0, 1)")


def _same_cutoff(x: TwoModeState, y: TwoModeState):
    if x.cutoff != y.cutoff:
        raise CutoffMismatch(f"cutoffs differ: {x.cutoff} vs {y.cutoff}")


def poisson_tail(mean: float, n_max: int) -> float:
    """Probability mass of Poisson(mean) above ``n_max``."""
    if mean == 0:
        return 0.0
    return float(poisson.sf(n_max, mean))


def required_cutoff(mean: float, tail: float = DEFAULT_TAIL) -> int:
    """Smallest cutoff (>= 1) whose Poisson(mean) tail is at most ``tail``."""
    n = max(1, int(mean))
    while poisson_tail(mean, n) > tail:
        n += 1
    return n


def coherent_amplitudes(alpha: complex, n_max: int) -> np.ndarray:
    """Raw truncated amplitudes ``exp(-|alpha|^2/2) alpha^n / sqrt(n!)``, not renormalized."""
    alpha = complex(alpha)
    c = np.empty(n_max + 1, dtype=np.complex128)
    c[0] = np.exp(-abs(alpha) ** 2 / 2)
    # recurrence avoids overflow of alpha**n and n!
    for n in range(1, n_max + 1):
        c[n] = c[n - 1] * alpha / np.sqrt(n)
    return c


def check_tail(alpha: complex, n_max: int, tail: float):
    mean = abs(alpha) ** 2
    if poisson_tail(mean, n_max) > tail:
        need = required_cutoff(mean, tail)
        raise CutoffTooSmall(
            f"cutoff {n_max} loses more than {tail:g} probability for |alpha|^2={mean:g}; "
            f"need n_max >= {need}",
            required=need,
        )


def embed(vec, mode: Mode, cutoff: int) -> TwoModeState:
    """Place a single-mode vector on ``mode`` with the other mode in vacuum."""
    n_max = check_cutoff(cutoff)
    vec = np.asarray(vec, dtype=np.complex128)
    if vec.shape != (n_max + 1,):
        raise CutoffMismatch(f"vector length {vec.shape[0]} does not match cutoff {n_max}")
    amps = np.zeros((n_max + 1, n_max + 1), dtype=np.complex128)
    if check_mode(mode) == "a":
        amps[:, 0] = vec
    else:
        amps[0, :] = vec
    return TwoModeState(amps)


def product_state(vec_a, vec_b) -> TwoModeState:
    """Tensor product of two single-mode amplitude vectors of equal length."""
    vec_a = np.asarray(vec_a, dtype=np.complex128)
    vec_b = np.asarray(vec_b, dtype=np.complex128)
    if vec_a.shape != vec_b.shape:
        raise CutoffMismatch("single-mode vectors have different lengths")
    return TwoModeState(np.outer(vec_a, vec_b))


def fock_state(n: int, m: int, cutoff: int) -> TwoModeState:
    n_max = check_cutoff(cutoff)
    if n < 0 or m < 0:
        raise ValueError("photon numbers must be non-negative")
    if n > n_max or m > n_max:
        raise CutoffExceeded(f"|{n},{m}> needs cutoff >= {max(n, m)}, have {n_max}")
    amps = np.zeros((n_max + 1, n_max + 1), dtype=np.complex128)
    amps[n, m] = 1.0
    return TwoModeState(amps)


def vacuum(cutoff: int) -> TwoModeState:
    return fock_state(0, 0, cutoff)


def coherent_vector(spec: CoherentSpec | complex, cutoff: int) -> np.ndarray:
    """Renormalized single-mode coherent amplitudes, tail-checked."""
    if not isinstance(spec, CoherentSpec):
        spec = CoherentSpec(spec)
    n_max = check_cutoff(cutoff)
    check_tail(spec.alpha, n_max, spec.truncation_tail)
    c = coherent_amplitudes(spec.alpha, n_max)
    return c / np.linalg.norm(c)


def coherent_state(spec: CoherentSpec | complex, mode: Mode, cutoff: int) -> TwoModeState:
    """``|alpha>`` on ``mode`` and vacuum on the other, renormalized after truncation.

    Raises CutoffTooSmall when more than ``spec.truncation_tail`` of the
    Poisson weight falls above the cutoff.
    """
    return embed(coherent_vector(spec, cutoff), mode, cutoff)


def cat_state(spec: CatSpec, mode: Mode, cutoff: int) -> tuple[TwoModeState, CatSpec]:
    """Normalized ``eta (|alpha> + sign |beta>)`` on ``mode``.

    Returns the state together with a copy of ``spec`` carrying ``eta``, the
    reciprocal norm of the truncated, unnormalized superposition.
    """
    n_max = check_cutoff(cutoff)
    check_tail(spec.alpha, n_max, spec.truncation_tail)
    check_tail(spec.beta, n_max, spec.truncation_tail)
    vec = coherent_amplitudes(spec.alpha, n_max) + spec.sign * coherent_amplitudes(spec.beta, n_max)
    norm = np.linalg.norm(vec)
    if norm == 0:
        raise ZeroState("cat superposition vanishes (alpha == beta with sign -1)")
    eta = 1.0 / norm
    return embed(vec * eta, mode, n_max), replace(spec, eta=float(eta))


def inner_product(x: TwoModeState, y: TwoModeState) -> complex:
    """``<x|y>``, conjugate-linear in the first argument."""
    _same_cutoff(x, y)
    return complex(np.vdot(x.amps, y.amps))


def normalize(x: TwoModeState) -> TwoModeState:
    norm = x.norm()
    if norm == 0:
        raise ZeroState("cannot normalize the zero vector")
    return TwoModeState(x.amps / norm)


def random_state(cutoff: int, rng: np.random.Generator, max_total: int | None = None) -> TwoModeState:
    """Haar-like random normalized state supported on total photon number <= ``max_total``.

    ``max_total`` defaults to the cutoff, the region beam splitters act on
    without truncation error.
    """
    n_max = check_cutoff(cutoff)
    max_total = n_max if max_total is None else max_total
    amps = rng.normal(size=(n_max + 1, n_max + 1)) + 1j * rng.normal(size=(n_max + 1, n_max + 1))
    n, m = np.indices(amps.shape)
    amps[n + m > max_total] = 0
    return normalize(TwoModeState(amps))

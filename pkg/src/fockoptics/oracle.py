"""Closed-form output states of the worked single-splitter and Mach-Zehnder cases.

Each oracle builds its state straight from closed-form amplitudes, phases
included, and never calls the splitter engine. The generic input of a single
splitter has no fixture of its own: it *is* the engine
(:func:`fockoptics.splitter.apply_bs_analytic`).

Two-splitter cases use the combinations

    transmit = T1 T2 - R1 R2      (cos 2 theta for equal splitters)
    reflect  = T1 R2 + R1 T2      (sin 2 theta)

so that the one-photon output is ``transmit |1,0> + i reflect |0,1>``.
"""

from __future__ import annotations

import enum
import math

import numpy as np

from .fock import (
    CatSpec,
    CoherentSpec,
    TwoModeState,
    check_cutoff,
    check_tail,
    coherent_amplitudes,
    coherent_vector,
    normalize,
    product_state,
)
from .splitter import SplitterParams, _params


class CaseId(str, enum.Enum):
    CASE1 = "Case1_single_photon_one_BS"
    CASE2 = "Case2_coherent_one_BS"
    CASE4 = "Case4_single_photon_MZ"
    CASE5 = "Case5_two_photon_MZ"
    CASE6 = "Case6_one_one_MZ"
    CASE7 = "Case7_coherent_MZ"
    CASE8 = "Case8_cat_MZ"

    @classmethod
    def parse(cls, text: str) -> CaseId:
        """Accept the full name, ``Case6`` or ``6``."""
        key = str(text).strip().lower()
        for case in cls:
            short = case.value.split("_")[0].lower()
            if key in (case.value.lower(), short, short.removeprefix("case"), case.name.lower()):
                return case
        raise ValueError(f"unknown case {text!r}")

    @property
    def short(self) -> str:
        return self.value.split("_")[0]

    @property
    def two_splitters(self) -> bool:
        return self not in (CaseId.CASE1, CaseId.CASE2)


def mz_coefficients(p1: SplitterParams, p2: SplitterParams) -> tuple[float, float]:
    """``(T1 T2 - R1 R2, T1 R2 + R1 T2)``."""
    p1, p2 = _params(p1), _params(p2)
    return p1.t * p2.t - p1.r * p2.r, p1.t * p2.r + p1.r * p2.t


def oracle_case1(params: SplitterParams, cutoff: int) -> TwoModeState:
    """``T|1,0> + iR|0,1>``."""
    params = _params(params)
    return TwoModeState.from_amplitudes({(1, 0): params.t, (0, 1): 1j * params.r}, cutoff)


def oracle_case2(params: SplitterParams, alpha: complex, cutoff: int, tail: float = 1e-12) -> TwoModeState:
    """``|T alpha>_a |i R alpha>_b``."""
    params = _params(params)
    return _coherent_product(params.t * alpha, 1j * params.r * alpha, cutoff, tail)


def oracle_case4(p1: SplitterParams, p2: SplitterParams, cutoff: int) -> TwoModeState:
    """``(T1T2 - R1R2)|1,0> + i(R1T2 + R2T1)|0,1>``."""
    tr, rf = mz_coefficients(p1, p2)
    return TwoModeState.from_amplitudes({(1, 0): tr, (0, 1): 1j * rf}, cutoff)


def _cross(p1: SplitterParams, p2: SplitterParams) -> float:
    # cross term T1^2 T2 R2 + T1 T2^2 R1 - T1 R1 R2^2 - R1^2 R2 T2
    t1, r1, t2, r2 = p1.t, p1.r, p2.t, p2.r
    return t1 * t1 * t2 * r2 + t1 * t2 * t2 * r1 - t1 * r1 * r2 * r2 - r1 * r1 * r2 * t2


def oracle_case5(p1: SplitterParams, p2: SplitterParams, cutoff: int) -> TwoModeState:
    """Input ``|2,0>`` through two splitters, general-coefficient form."""
    p1, p2 = _params(p1), _params(p2)
    tr, rf = mz_coefficients(p1, p2)
    return TwoModeState.from_amplitudes(
        {
            (2, 0): tr**2,
            (0, 2): -(rf**2),
            (1, 1): 1j * math.sqrt(2) * _cross(p1, p2),
        },
        cutoff,
    )


def oracle_case6(p1: SplitterParams, p2: SplitterParams, cutoff: int) -> TwoModeState:
    """Input ``|1,1>`` through two splitters, general-coefficient form."""
    p1, p2 = _params(p1), _params(p2)
    tr, rf = mz_coefficients(p1, p2)
    bunch = 1j * math.sqrt(2) * _cross(p1, p2)
    return TwoModeState.from_amplitudes(
        {(1, 1): tr**2 - rf**2, (2, 0): bunch, (0, 2): bunch},
        cutoff,
    )


def oracle_case5_equal(theta: float, cutoff: int) -> TwoModeState:
    """``cos^2(2t)|2,0> - sin^2(2t)|0,2> + (i/sqrt2) sin(4t)|1,1>``."""
    return TwoModeState.from_amplitudes(
        {
            (2, 0): math.cos(2 * theta) ** 2,
            (0, 2): -math.sin(2 * theta) ** 2,
            (1, 1): 1j / math.sqrt(2) * math.sin(4 * theta),
        },
        cutoff,
    )


def oracle_case6_equal(theta: float, cutoff: int) -> TwoModeState:
    """``cos(4t)|1,1> + (i/sqrt2) sin(4t)(|2,0> + |0,2>)``."""
    bunch = 1j / math.sqrt(2) * math.sin(4 * theta)
    return TwoModeState.from_amplitudes(
        {(1, 1): math.cos(4 * theta), (2, 0): bunch, (0, 2): bunch},
        cutoff,
    )


def _coherent_product(alpha_a: complex, alpha_b: complex, cutoff: int, tail: float) -> TwoModeState:
    return product_state(
        coherent_vector(CoherentSpec(alpha_a, tail), cutoff),
        coherent_vector(CoherentSpec(alpha_b, tail), cutoff),
    )


def oracle_case7(
    p1: SplitterParams, p2: SplitterParams, alpha: complex, cutoff: int, tail: float = 1e-12
) -> TwoModeState:
    """``|(T1T2 - R1R2) alpha>_a |(T1R2 + R1T2) i alpha>_b``."""
    tr, rf = mz_coefficients(p1, p2)
    return _coherent_product(tr * alpha, 1j * rf * alpha, cutoff, tail)


def oracle_case8(p1: SplitterParams, p2: SplitterParams, cat: CatSpec, cutoff: int) -> TwoModeState:
    """``eta(|tr alpha>_a |i rf alpha>_b + sign |tr beta>_a |i rf beta>_b)``.

    Uses the general two-splitter form; ``eta`` is recomputed from the
    truncated two-mode superposition.
    """
    n_max = check_cutoff(cutoff)
    tr, rf = mz_coefficients(p1, p2)
    check_tail(cat.alpha, n_max, cat.truncation_tail)
    check_tail(cat.beta, n_max, cat.truncation_tail)

    def branch(x):
        return np.outer(coherent_amplitudes(tr * x, n_max), coherent_amplitudes(1j * rf * x, n_max))

    return normalize(TwoModeState(branch(cat.alpha) + cat.sign * branch(cat.beta)))

"""Circuits of splitters, mirrors and phase shifters; photon-number detection.

Detectors are ideal photon-number-resolving projectors. Mirrors only route
beams and act as the identity on the state.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence, Union

import numpy as np

from .errors import CutoffExceeded, CutoffMismatch, CutoffTooSmall
from .fock import Mode, TwoModeState, check_cutoff, check_mode, fock_state, product_state
from .operators import phase_matrix
from .splitter import SplitterParams, _params, apply_bs

# outcomes less likely than this are reported as impossible, not renormalized
IMPOSSIBLE = 1e-15


@dataclass(frozen=True)
class Splitter:
    params: SplitterParams

    def __post_init__(self):
        object.__setattr__(self, "params", _params(self.params))


@dataclass(frozen=True)
class PhaseShift:
    mode: Mode
    phi: float

    def __post_init__(self):
        check_mode(self.mode)


@dataclass(frozen=True)
class Mirror:
    label: str = ""


CircuitElement = Union[Splitter, PhaseShift, Mirror]


@dataclass(frozen=True)
class Circuit:
    elements: tuple[CircuitElement, ...]
    cutoff: int

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "cutoff", check_cutoff(self.cutoff))
        for el in self.elements:
            if not isinstance(el, (Splitter, PhaseShift, Mirror)):
                raise TypeError(f"not a circuit element: {el!r}")

    def __len__(self):
        return len(self.elements)


def mach_zehnder(
    p1: SplitterParams,
    p2: SplitterParams,
    cutoff: int,
    phase: float | None = None,
    phase_mode: Mode = "a",
) -> Circuit:
    """Two splitters joined by mirrors, optionally with a phase shifter on one arm."""
    inner: list[CircuitElement] = [Mirror("M1")]
    if phase is not None:
        inner.append(PhaseShift(phase_mode, phase))
    inner.append(Mirror("M2"))
    return Circuit((Splitter(p1), *inner, Splitter(p2)), cutoff)


def apply_phase(state: TwoModeState, mode: Mode, phi: float) -> TwoModeState:
    diag = np.diag(phase_matrix(phi, state.cutoff).matrix)
    if check_mode(mode) == "a":
        return TwoModeState(state.amps * diag[:, None])
    return TwoModeState(state.amps * diag[None, :])


def run_circuit(state: TwoModeState, circuit: Circuit, method: str = "numeric") -> TwoModeState:
    """Apply the elements of ``circuit`` in order."""
    if state.cutoff != circuit.cutoff:
        raise CutoffMismatch(f"state cutoff {state.cutoff} != circuit cutoff {circuit.cutoff}")
    for el in circuit.elements:
        if isinstance(el, Splitter):
            state = apply_bs(state, el.params, method=method)
        elif isinstance(el, PhaseShift):
            state = apply_phase(state, el.mode, el.phi)
    return state


@dataclass(frozen=True)
class MeasurementRecord:
    """Outcome ``outcome`` of a photon counter on ``mode``.

    ``conditional_state`` is the renormalized post-measurement state (the
    measured mode left in ``|outcome>``); it is ``None`` when the outcome is
    impossible, in which case ``possible`` is False.
    """

    mode: Mode
    outcome: int
    probability: float
    conditional_state: TwoModeState | None = field(default=None, repr=False)

    @property
    def possible(self) -> bool:
        return self.conditional_state is not None

    def other_mode_vector(self) -> np.ndarray:
        """Single-mode amplitudes of the unmeasured mode after the projection."""
        if self.conditional_state is None:
            raise ValueError("impossible outcome has no conditional state")
        amps = self.conditional_state.amps
        return amps[self.outcome, :] if self.mode == "a" else amps[:, self.outcome]


def project_mode(state: TwoModeState, mode: Mode, outcome: int) -> TwoModeState:
    """Unnormalized projection of ``mode`` onto ``|outcome>``."""
    if outcome < 0 or outcome > state.cutoff:
        raise CutoffExceeded(f"outcome {outcome} outside cutoff {state.cutoff}")
    amps = np.zeros_like(state.amps)
    if check_mode(mode) == "a":
        amps[outcome, :] = state.amps[outcome, :]
    else:
        amps[:, outcome] = state.amps[:, outcome]
    return TwoModeState(amps)


def measure_mode(state: TwoModeState, mode: Mode, outcome: int) -> MeasurementRecord:
    projected = project_mode(state, mode, outcome)
    prob = projected.norm() ** 2
    if prob < IMPOSSIBLE:
        return MeasurementRecord(mode, outcome, prob, None)
    return MeasurementRecord(mode, outcome, prob, TwoModeState(projected.amps / np.sqrt(prob)))


def detection_distribution(state: TwoModeState, mode: Mode) -> list[tuple[int, float]]:
    """Marginal photon-count distribution ``[(k, P(k)), ...]`` of ``mode``."""
    weights = np.abs(state.amps) ** 2
    marginal = weights.sum(axis=1) if check_mode(mode) == "a" else weights.sum(axis=0)
    return [(k, float(p)) for k, p in enumerate(marginal)]


def detection_probability(state: TwoModeState, mode: Mode, outcome: int) -> float:
    return detection_distribution(state, mode)[outcome][1]


def swap_modes(state: TwoModeState) -> TwoModeState:
    """Exchange the roles of modes a and b (pure beam routing)."""
    return TwoModeState(state.amps.T)


def phase_scenario(theta: float, phi: float, cutoff: int = 2, phase_mode: Mode = "a") -> float:
    """P(one photon at the mode-a output) for ``|1,0>`` through an equal-splitter MZ
    with a phase ``phi`` on one inner arm."""
    p = SplitterParams(theta)
    circuit = mach_zehnder(p, p, cutoff, phase=phi, phase_mode=phase_mode)
    out = run_circuit(fock_state(1, 0, cutoff), circuit)
    return detection_probability(out, "a", 1)


class LadderResult(NamedTuple):
    state: TwoModeState | None
    success_probability: float
    stage_probabilities: tuple[float, ...]


def fock_ladder_protocol(
    n_stages: int,
    theta: float,
    cutoff: int,
    ancilla: int = 1,
    herald: int = 0,
) -> LadderResult:
    """Build up photon number by repeated heralded Mach-Zehnder stages.

    Stage one sends ``|1,1>`` through two splitters of angle ``theta``.
    Every stage counts mode a; on ``herald`` photons the mode-b state is
    routed into mode a of the next stage, with ``|ancilla>`` in mode b.
    The returned state is the last conditional state (mode a in
    ``|herald>``); the success probability is the product of the stage
    probabilities. An impossible herald stops the ladder and returns
    ``state=None`` with probability 0.
    """
    if n_stages < 1:
        raise ValueError("n_stages must be >= 1")
    n_max = check_cutoff(cutoff)
    photons = 2
    for stage in range(n_stages):
        if stage:
            photons += ancilla
        if photons > n_max:
            raise CutoffTooSmall(f"stage {stage + 1} carries {photons} photons; cutoff is {n_max}", required=photons)
        photons -= herald

    p = SplitterParams(theta)
    circuit = mach_zehnder(p, p, n_max)
    state = fock_state(1, 1, n_max)
    probs: list[float] = []
    total = 1.0
    for stage in range(n_stages):
        if stage:
            ancilla_vec = np.zeros(n_max + 1)
            ancilla_vec[ancilla] = 1.0
            state = product_state(record.other_mode_vector(), ancilla_vec)
        out = run_circuit(state, circuit)
        record = measure_mode(out, "a", herald)
        probs.append(record.probability)
        if not record.possible:
            return LadderResult(None, 0.0, tuple(probs))
        total *= record.probability
    return LadderResult(record.conditional_state, total, tuple(probs))


def sweep_theta(
    input_state: TwoModeState, thetas: Sequence[float], build, mode: Mode = "a", outcome: int = 1
) -> np.ndarray:
    """P(``outcome`` on ``mode``) for each angle, with ``build(theta) -> Circuit``."""
    return np.array([detection_probability(run_circuit(input_state, build(t)), mode, outcome) for t in thetas])

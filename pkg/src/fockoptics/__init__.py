"""Two-mode truncated Fock-space simulator for beam splitters and Mach-Zehnder interferometers."""

from .errors import ConfigInvalid, CutoffExceeded, CutoffMismatch, CutoffTooSmall, FockError, ZeroState
from .fock import (
    CatSpec,
    CoherentSpec,
    TwoModeState,
    cat_state,
    coherent_state,
    fock_state,
    inner_product,
    normalize,
    product_state,
    required_cutoff,
    vacuum,
)
from .interferometer import (
    Circuit,
    Mirror,
    PhaseShift,
    Splitter,
    detection_distribution,
    fock_ladder_protocol,
    mach_zehnder,
    measure_mode,
    run_circuit,
)
from .metrics import coherent_overlap, fidelity, photon_stats, schmidt_decompose, thermal_distribution
from .oracle import CaseId
from .splitter import SplitterParams, apply_bs, apply_bs_analytic, apply_bs_numeric, bs_unitary
from .verification import run_verification_suite

__version__ = "0.1.0"

"""Steady-state simulator for a three-qubit thermal transistor.

Builds the coupled three-qubit Hamiltonian, assembles the weak-coupling
master equation for three independent bosonic reservoirs, solves for the
non-equilibrium steady state, and evaluates heat currents, amplification
factors and quantum-information diagnostics on it.
"""

from .baths import BathSpec, bose_occupation, default_cutoff, rates, resolve_cutoff, spectral_density
from .config import ConfigError, OutputFlags, RunConfig, parse_config, preset
from .dynamics import (
    DegenerateSteadyStateError,
    LiouvillianBuilder,
    build_liouvillian,
    dissipator,
    gibbs_state,
    liouvillian_from_decomposition,
    propagate,
    solve_ness,
    trace_functional_residual,
    unvec,
    vec,
)
from .infoquant import (
    ReferenceState,
    entropy,
    fidelity,
    mutual_info_2,
    mutual_info_3,
    negativity,
    reference_state,
)
from .linalg import (
    EigenSystem,
    hermitian_eig,
    hermitize,
    kron,
    partial_trace,
    partial_transpose,
    psd_sqrt,
    trace_distance,
    trace_norm,
)
from .model import (
    RESERVOIRS,
    SpectralDecomposition,
    SystemSpec,
    build_hamiltonian,
    decompose,
    site_operator,
)
from .observables import (
    AmplificationPoint,
    CurrentTriple,
    amplification,
    heat_currents,
    linear_fit,
)
from .sweep import SweepRecord, emit, load_records, records_equal, run_sweep

__version__ = "0.1.0"

__all__ = [
    "AmplificationPoint",
    "BathSpec",
    "ConfigError",
    "CurrentTriple",
    "DegenerateSteadyStateError",
    "EigenSystem",
    "LiouvillianBuilder",
    "OutputFlags",
    "ReferenceState",
    "RESERVOIRS",
    "RunConfig",
    "SpectralDecomposition",
    "SweepRecord",
    "SystemSpec",
    "amplification",
    "bose_occupation",
    "build_hamiltonian",
    "build_liouvillian",
    "decompose",
    "default_cutoff",
    "dissipator",
    "emit",
    "entropy",
    "fidelity",
    "gibbs_state",
    "heat_currents",
    "hermitian_eig",
    "hermitize",
    "kron",
    "linear_fit",
    "liouvillian_from_decomposition",
    "load_records",
    "mutual_info_2",
    "mutual_info_3",
    "negativity",
    "parse_config",
    "partial_trace",
    "partial_transpose",
    "preset",
    "propagate",
    "psd_sqrt",
    "rates",
    "records_equal",
    "reference_state",
    "resolve_cutoff",
    "run_sweep",
    "site_operator",
    "solve_ness",
    "spectral_density",
    "trace_distance",
    "trace_functional_residual",
    "trace_norm",
    "unvec",
    "vec",
]

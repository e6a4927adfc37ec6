"""Entanglement of formation for 2 x d states that come from tracing a qubit
out of a qubit-qubit-qudit pure state."""

__version__ = "0.1.0"

from .bounds import BoundReport, caf_lower_bound, concurrence, pure_state_eof_2xd, wootters_eof
from .linalg import (
    TOL,
    DimSpec,
    binary_entropy,
    hermitian_eigenvalues,
    kron,
    partial_trace,
    partial_transpose,
    realign,
    trace_norm,
    von_neumann_entropy,
)
from .models import (
    ReservoirParams,
    TCParams,
    lindblad_oracle,
    reservoir_amplitudes,
    reservoir_theta_candidates,
    reservoir_tripartite_state,
    schrodinger_oracle_tc,
    tc_amplitudes,
    tc_theta_candidates_n0,
    tc_tripartite_state,
    tc_xstate_elements,
)
from .oracle import OptimizerConfig, detect_crossovers, minimize_conditional_entropy
from .sweep import SweepConfig, SweepRecord, emit, load, run_sweep
from .xstate import (
    MeasurementEnsemble,
    ThetaCandidate,
    TripartiteState,
    XFormViolation,
    XState,
    classical_correlation,
    conditional_entropy_for_measurement,
    eof_xstate,
    koashi_winter_eof,
    quantum_discord,
    xstate_candidates,
    xstate_reduction,
)

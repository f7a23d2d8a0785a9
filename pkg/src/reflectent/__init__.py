"""Reflected entropy, Markov gap and Renyi monotonicity for fermionic modes
seen by a uniformly accelerated observer."""

from reflectent.counterexample import (
    CounterexampleConstructionError,
    CounterexampleParams,
    build_counterexample,
    monotonicity_gap,
    scan_xi,
)
from reflectent.entropy import (
    Bipartition,
    PureState,
    bounds_report,
    canonical_purification,
    conditional_mutual_information,
    fidelity,
    markov_gap,
    mutual_information,
    reflected_density,
    reflected_entropy,
    renyi_entropy,
    renyi_reflected_entropy,
    subsystem_entropy,
    von_neumann_entropy,
)
from reflectent.errors import (
    ArgumentError,
    ConvergenceError,
    InvariantError,
    LabelError,
    NotHermitianError,
    NotPSDError,
    ReflectentError,
)
from reflectent.linalg import DensityMatrix, QRegister, hermitian_eig, partial_trace, product, psd_sqrt
from reflectent.rindler import (
    AccelerationParams,
    StateFamily,
    accelerated_state,
    acceleration_parameter,
    reduced_state,
    sigma_function,
    sweep,
    unruh_occupancy,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

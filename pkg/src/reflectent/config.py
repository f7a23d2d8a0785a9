"""Numeric policy shared by every module.

Values are read at call time, so assigning to a module attribute (or
calling :func:`set_tolerances`) changes behaviour globally. Do this once at
startup; the library itself never mutates them.
"""

import os

#: Entrywise asymmetry allowed for a certified density matrix.
HERMITIAN_TOL = 1e-10
#: Asymmetry accepted by the eigensolver before it refuses the input.
EIG_HERMITIAN_TOL = 1e-8
#: |trace - 1| allowed for a density matrix / |norm^2 - 1| for a pure state.
TRACE_TOL = 1e-10
#: Eigenvalues in [-PSD_TOL, 0) are rounding noise and clamped to zero.
PSD_TOL = 1e-8
#: Eigenvalues at or below this contribute nothing to an entropy.
SPECTRUM_CUTOFF = 1e-14
#: Jacobi stops once off(H)_F <= JACOBI_TOL * ||H||_F.
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
#: Logarithm base for every entropy. 2 gives bits.
LOG_BASE = 2.0

#: Set REFLECTENT_NO_NUMBA=1 to force the pure-numpy kernels.
USE_NUMBA = os.environ.get("REFLECTENT_NO_NUMBA", "").strip().lower() not in {"1", "true", "yes"}

_TUNABLE = (
    "HERMITIAN_TOL",
    "EIG_HERMITIAN_TOL",
    "TRACE_TOL",
    "PSD_TOL",
    "SPECTRUM_CUTOFF",
    "JACOBI_TOL",
    "JACOBI_MAX_SWEEPS",
    "LOG_BASE",
)


def set_tolerances(**overrides):
    """Override numeric constants by name, e.g. ``set_tolerances(PSD_TOL=1e-6)``."""
    g = globals()
    for name, value in overrides.items():
        if name not in _TUNABLE:
            raise KeyError(f"unknown tolerance {name!r}; choose from {', '.join(_TUNABLE)}")
        g[name] = type(g[name])(value)


def current():
    """Snapshot of the tunable constants."""
    g = globals()
    return {name: g[name] for name in _TUNABLE}

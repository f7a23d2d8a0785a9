"""States on C^(n+1) x C^(m+1) x C^2 whose Renyi reflected entropy grows
under partial trace, and scans of that monotonicity gap over the Renyi index.

The family is a mixture of product projectors::

    a (|000><000| + |110><110| + sum_{k=2..n} |k00><k00| + |k10><k10|)
  + b (sum_{l=2..m} |0l0><0l0| + |1l1><1l1|)

normalized numerically. With ``(n, m) = (3, 2)`` the normalization is
``1/(6a + 2b)``; ``(2, 2)`` is the qutrit-qutrit-qubit example.

A second reading, ``"printed"``, keeps the three ``a|k00><000|``-style terms
of the (3, 2) state as coherences and Hermitian-symmetrizes them. That
matrix is not positive semidefinite; building it raises
:class:`CounterexampleConstructionError`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from reflectent.entropy import Bipartition, reflected_spectrum, renyi_of_spectrum
from reflectent.errors import ArgumentError, NotPSDError
from reflectent.linalg import DensityMatrix, QRegister, clamp_spectrum, hermitian_eig

READINGS = ("projector", "printed")


class CounterexampleConstructionError(NotPSDError):
    """The assembled matrix is not a state for the requested reading."""


@dataclass(frozen=True)
class CounterexampleParams:
    n: int
    m: int
    a: float
    b: float

    def __post_init__(self):
        if int(self.n) != self.n or int(self.m) != self.m:
            raise ArgumentError("n and m must be integers")
        if self.n < 2 or self.m < 2:
            raise ArgumentError(f"need n >= 2 and m >= 2, got n={self.n}, m={self.m}")
        if not (math.isfinite(self.a) and math.isfinite(self.b)) or self.a < 0 or self.b < 0:
            raise ArgumentError(f"weights must be finite and non-negative, got a={self.a}, b={self.b}")
        if self.a + self.b <= 0:
            raise ArgumentError("a + b must be positive")

    @property
    def ratio(self) -> float:
        return math.inf if self.b == 0 else self.a / self.b

    def register(self) -> QRegister:
        return QRegister.of(("A", self.n + 1), ("B", self.m + 1), ("C", 2))


def _index(p: CounterexampleParams, i: int, j: int, k: int) -> int:
    return (i * (p.m + 1) + j) * 2 + k


def assemble(p: CounterexampleParams, reading: str = "projector") -> np.ndarray:
    """Unnormalized matrix for the given reading (no positivity check)."""
    if reading not in READINGS:
        raise ArgumentError(f"unknown reading {reading!r}; choose from {', '.join(READINGS)}")
    d = (p.n + 1) * (p.m + 1) * 2
    mat = np.zeros((d, d))

    def add(ket, bra, w):
        mat[_index(p, *ket), _index(p, *bra)] += w

    add((0, 0, 0), (0, 0, 0), p.a)
    add((1, 1, 0), (1, 1, 0), p.a)
    for k in range(2, p.n + 1):
        if reading == "projector":
            add((k, 0, 0), (k, 0, 0), p.a)
            add((k, 1, 0), (k, 1, 0), p.a)
        else:
            add((k, 0, 0), (0, 0, 0), p.a)
            add((k, 1, 0), (1, 1, 0), p.a)
    for l in range(2, p.m + 1):
        add((0, l, 0), (0, l, 0), p.b)
        add((1, l, 1), (1, l, 1), p.b)
    if reading == "printed":
        mat = mat + mat.T - np.diag(np.diag(mat))
    return mat


def build_counterexample(p: CounterexampleParams, reading: str = "projector") -> DensityMatrix:
    """The counterexample state on A:(n+1), B:(m+1), C:2.

    Raises:
        CounterexampleConstructionError: if the reading does not give a PSD
            unit-trace matrix; the message carries the lowest eigenvalue.
    """
    mat = assemble(p, reading)
    tr = float(np.trace(mat))
    if tr <= 0:
        raise CounterexampleConstructionError(f"{reading} reading has trace {tr:g} for {p}")
    mat = mat / tr
    low = float(hermitian_eig(mat).eigenvalues[-1])
    try:
        clamp_spectrum([low])
    except NotPSDError:
        raise CounterexampleConstructionError(
            f"{reading} reading of {p} is not positive semidefinite (lowest eigenvalue {low:.6g})"
        ) from None
    return DensityMatrix(mat, p.register())


def _split(rho: DensityMatrix, a: str, b: str, c: str):
    labels = set(rho.reg.labels)
    if labels != {a, b, c}:
        raise ArgumentError(f"monotonicity gap needs exactly the labels {a},{b},{c}; register is {rho.reg}")
    full = Bipartition.of(a, [b, c])
    return reflected_spectrum(rho, full), reflected_spectrum(_trace_out(rho, c), Bipartition.of(a, b))


def _trace_out(rho: DensityMatrix, label: str) -> DensityMatrix:
    from reflectent.linalg import partial_trace

    return partial_trace(rho, [lab for lab in rho.reg.labels if lab != label])


def monotonicity_gap(rho: DensityMatrix, xi: float, a: str = "A", b: str = "B", c: str = "C") -> float:
    """``S_R^xi(a:bc) - S_R^xi(a:b)``; negative values break monotonicity."""
    full, part = _split(rho, a, b, c)
    return renyi_of_spectrum(full, xi) - renyi_of_spectrum(part, xi)


@dataclass(frozen=True)
class ScanRecord:
    xi: float
    gap: float
    params: CounterexampleParams | None


def scan_state(rho: DensityMatrix, xi_grid: Iterable[float], params=None, labels=("A", "B", "C")) -> list[ScanRecord]:
    """Monotonicity gap of an arbitrary tripartite state over a Renyi grid."""
    full, part = _split(rho, *labels)
    return [ScanRecord(float(x), renyi_of_spectrum(full, x) - renyi_of_spectrum(part, x), params) for x in xi_grid]


def scan_xi(p: CounterexampleParams, xi_grid: Iterable[float], reading: str = "projector") -> list[ScanRecord]:
    """Gap at every Renyi index of the grid, in grid order."""
    return scan_state(build_counterexample(p, reading), xi_grid, params=p)


def violation_right_edge(records: list[ScanRecord]) -> float | None:
    """Largest ``xi`` at which the gap is negative, or None if there is none."""
    neg = [rec.xi for rec in records if rec.gap < 0]
    return max(neg) if neg else None

"""Labelled registers, density matrices and the small dense linear algebra
everything else is built on.

Matrices are plain ``complex128`` numpy arrays. Registers attach an ordered
list of ``(label, dim)`` factors to them so subsystems can be addressed by
name instead of by axis number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

from reflectent import _kernels, config
from reflectent.errors import (
    ArgumentError,
    ConvergenceError,
    LabelError,
    NotHermitianError,
    NotPSDError,
)

STAR = "star"


def mirror_label(label: str) -> str:
    """Label of the mirrored (starred) copy, e.g. ``A -> Astar``."""
    return label + STAR


@dataclass(frozen=True)
class QRegister:
    """Ordered tensor factors, each a ``(label, dim)`` pair."""

    factors: tuple[tuple[str, int], ...]

    def __post_init__(self):
        factors = tuple((str(lab), int(d)) for lab, d in self.factors)
        object.__setattr__(self, "factors", factors)
        if not factors:
            raise ArgumentError("a register needs at least one factor")
        labels = [lab for lab, _ in factors]
        if len(set(labels)) != len(labels):
            raise LabelError(f"duplicate labels in register {labels}")
        for lab, d in factors:
            if not lab:
                raise LabelError("empty label")
            if d < 1:
                raise ArgumentError(f"factor {lab!r} has non-positive dimension {d}")

    @classmethod
    def of(cls, *factors: tuple[str, int]) -> "QRegister":
        return cls(tuple(factors))

    @classmethod
    def qubits(cls, *labels: str) -> "QRegister":
        return cls(tuple((lab, 2) for lab in labels))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(lab for lab, _ in self.factors)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.factors)

    @property
    def dim(self) -> int:
        return math.prod(self.dims)

    def __len__(self):
        return len(self.factors)

    def __contains__(self, label):
        return label in self.labels

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise LabelError(f"label {label!r} not in register {list(self.labels)}") from None

    def dim_of(self, label: str) -> int:
        return self.factors[self.index(label)][1]

    def check_labels(self, labels: Iterable[str]) -> frozenset[str]:
        labels = frozenset(labels)
        missing = sorted(labels - set(self.labels))
        if missing:
            raise LabelError(f"labels {missing} not in register {list(self.labels)}")
        return labels

    def subset(self, keep: Iterable[str]) -> "QRegister":
        """Sub-register of ``keep`` in this register's order."""
        keep = self.check_labels(keep)
        return QRegister(tuple(f for f in self.factors if f[0] in keep))

    def mirrored(self) -> "QRegister":
        return QRegister(tuple((mirror_label(lab), d) for lab, d in self.factors))

    def __add__(self, other: "QRegister") -> "QRegister":
        return QRegister(self.factors + other.factors)

    def __str__(self):
        return "(" + ",".join(f"{lab}:{d}" for lab, d in self.factors) + ")"


class EigenSystem(NamedTuple):
    """Eigenvalues in descending order with matching eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ArgumentError(f"expected a 2-d matrix, got shape {m.shape}")
    return m


def asymmetry(h: np.ndarray) -> float:
    """Largest entrywise deviation from Hermiticity."""
    return float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0


def allclose(a, b, tol: float) -> bool:
    """Entrywise max-difference comparison."""
    a, b = np.asarray(a), np.asarray(b)
    return a.shape == b.shape and (a.size == 0 or float(np.max(np.abs(a - b))) <= tol)


def tensor(a, b) -> np.ndarray:
    """Kronecker product ``a ⊗ b``."""
    return np.kron(_as_matrix(a), _as_matrix(b))


def hermitian_eig(h, backend: str | None = None) -> EigenSystem:
    """Diagonalize a Hermitian matrix with cyclic complex Jacobi rotations.

    Args:
        h: square matrix, Hermitian to within ``config.EIG_HERMITIAN_TOL``.
        backend: ``"numba"``, ``"numpy"`` or ``None`` for the configured default.

    Returns:
        EigenSystem with eigenvalues sorted descending.

    Raises:
        NotHermitianError: if the asymmetry exceeds the tolerance.
        ConvergenceError: if the sweep cap is hit first.
    """
    m = _as_matrix(h)
    n, k = m.shape
    if n != k:
        raise ArgumentError(f"hermitian_eig needs a square matrix, got {m.shape}")
    skew = asymmetry(m)
    if skew > config.EIG_HERMITIAN_TOL:
        raise NotHermitianError(f"matrix is not Hermitian: max |H - H^dagger| = {skew:.3e}")
    m = 0.5 * (m + m.conj().T)
    scale = float(np.linalg.norm(m))
    if scale == 0.0:
        return EigenSystem(np.zeros(n), np.eye(n, dtype=np.complex128))
    threshold = config.JACOBI_TOL * scale
    d, v, _, off = _kernels.jacobi(m, threshold, config.JACOBI_MAX_SWEEPS, backend=backend)
    if off > threshold:
        raise ConvergenceError(
            f"Jacobi did not converge in {config.JACOBI_MAX_SWEEPS} sweeps; "
            f"off-diagonal norm {off:.3e} > {threshold:.3e}"
        )
    order = np.argsort(-d, kind="stable")
    return EigenSystem(d[order], np.ascontiguousarray(v[:, order]))


def clamp_spectrum(values: np.ndarray) -> np.ndarray:
    """Zero rounding-level negatives; reject genuine ones."""
    values = np.asarray(values, dtype=float)
    low = float(values.min()) if values.size else 0.0
    if low < -config.PSD_TOL:
        raise NotPSDError(f"matrix is not positive semidefinite: eigenvalue {low:.3e} < -{config.PSD_TOL:g}")
    return np.where(values < 0.0, 0.0, values)


def _sqrt_from_eig(lam, v):
    # noise-level eigenvalues would otherwise come back as ~sqrt(eps) terms
    root = np.sqrt(np.where(lam > config.SPECTRUM_CUTOFF, lam, 0.0))
    return (v * root) @ v.conj().T


def sqrt_psd_matrix(h) -> np.ndarray:
    """Principal square root of a Hermitian PSD matrix of any trace."""
    es = hermitian_eig(h)
    return _sqrt_from_eig(clamp_spectrum(es.eigenvalues), es.eigenvectors)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, PSD matrix on a labelled register.

    The eigensystem is computed once on construction (that is also how
    positivity is certified) and reused by every spectral function.
    """

    mat: np.ndarray
    reg: QRegister
    _eig: EigenSystem = field(init=False, repr=False)

    def __post_init__(self):
        m = np.array(self.mat, dtype=np.complex128, copy=True)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ArgumentError(f"density matrix must be square, got shape {m.shape}")
        if m.shape[0] != self.reg.dim:
            raise ArgumentError(f"matrix dimension {m.shape[0]} does not match register {self.reg} (dim {self.reg.dim})")
        skew = asymmetry(m)
        if skew > config.HERMITIAN_TOL:
            raise NotHermitianError(f"density matrix is not Hermitian: max |rho - rho^dagger| = {skew:.3e}")
        tr = np.trace(m)
        if abs(tr - 1.0) > config.TRACE_TOL:
            raise ArgumentError(f"density matrix trace is {tr.real:.12g}, expected 1")
        m = 0.5 * (m + m.conj().T)
        es = hermitian_eig(m)
        lam = clamp_spectrum(es.eigenvalues)
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)
        object.__setattr__(self, "_eig", EigenSystem(lam, es.eigenvectors))

    @classmethod
    def from_pure(cls, amps, reg: QRegister) -> "DensityMatrix":
        v = np.asarray(amps, dtype=np.complex128).reshape(-1)
        return cls(np.outer(v, v.conj()), reg)

    @classmethod
    def normalized(cls, mat, reg: QRegister) -> "DensityMatrix":
        """Build from an unnormalized Hermitian PSD matrix."""
        m = _as_matrix(mat)
        tr = np.trace(m).real
        if tr <= 0.0:
            raise ArgumentError(f"cannot normalize a matrix with trace {tr:g}")
        return cls(m / tr, reg)

    @classmethod
    def maximally_mixed(cls, reg: QRegister) -> "DensityMatrix":
        return cls(np.eye(reg.dim) / reg.dim, reg)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @property
    def eig(self) -> EigenSystem:
        return self._eig

    @property
    def spectrum(self) -> np.ndarray:
        """Clamped eigenvalues, descending."""
        return self._eig.eigenvalues

    def relabel(self, mapping: dict[str, str]) -> "DensityMatrix":
        reg = QRegister(tuple((mapping.get(lab, lab), d) for lab, d in self.reg.factors))
        return DensityMatrix(self.mat, reg)

    def __repr__(self):
        return f"DensityMatrix(reg={self.reg}, dim={self.dim})"


def product(*rhos: DensityMatrix) -> DensityMatrix:
    """Tensor product of density matrices, registers concatenated."""
    if not rhos:
        raise ArgumentError("product needs at least one factor")
    mat, reg = rhos[0].mat, rhos[0].reg
    for r in rhos[1:]:
        mat, reg = tensor(mat, r.mat), reg + r.reg
    return DensityMatrix(mat, reg)


def _einsum_letters(n):
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    if 2 * n > len(letters):
        raise ArgumentError(f"too many factors ({n}) for a partial trace")
    return letters[:n], letters[n : 2 * n]


def partial_trace_matrix(mat: np.ndarray, reg: QRegister, keep: Iterable[str]) -> np.ndarray:
    """Trace out every factor not in ``keep``; kept factors stay in order."""
    keep = reg.check_labels(keep)
    if not keep:
        raise ArgumentError("partial_trace needs a non-empty set of labels to keep")
    n = len(reg)
    rows, cols = _einsum_letters(n)
    cols = list(cols)
    for i, lab in enumerate(reg.labels):
        if lab not in keep:
            cols[i] = rows[i]
    out_r = "".join(rows[i] for i, lab in enumerate(reg.labels) if lab in keep)
    out_c = "".join(cols[i] for i, lab in enumerate(reg.labels) if lab in keep)
    t = np.asarray(mat).reshape(reg.dims + reg.dims)
    red = np.einsum(f"{rows}{''.join(cols)}->{out_r}{out_c}", t)
    d = math.prod(reg.dim_of(lab) for lab in keep)
    return red.reshape(d, d)


def partial_trace(rho: DensityMatrix, keep: Iterable[str]) -> DensityMatrix:
    """Reduced state on ``keep`` (labels of ``rho.reg``)."""
    keep = frozenset(keep)
    mat = partial_trace_matrix(rho.mat, rho.reg, keep)
    return DensityMatrix(mat, rho.reg.subset(keep))


def psd_sqrt(rho: DensityMatrix) -> np.ndarray:
    """Principal square root of a density matrix.

    Eigenvalues at or below ``config.SPECTRUM_CUTOFF`` are treated as exact
    zeros, so a pure projector maps to itself.
    """
    return _sqrt_from_eig(rho.spectrum, rho.eig.eigenvectors)

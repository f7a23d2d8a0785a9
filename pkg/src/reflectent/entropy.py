"""Entropies, reflected entropy and the Markov gap.

All values are in units of ``log(config.LOG_BASE)``; with the default base 2
that is bits. Functions that only need marginals accept either a
:class:`~reflectent.linalg.DensityMatrix` or a :class:`PureState`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from reflectent import config
from reflectent.errors import ArgumentError, InvariantError, LabelError
from reflectent.linalg import (
    DensityMatrix,
    QRegister,
    hermitian_eig,
    mirror_label,
    partial_trace,
    psd_sqrt,
)


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized amplitude vector on a labelled register."""

    amps: np.ndarray
    reg: QRegister

    def __post_init__(self):
        v = np.array(self.amps, dtype=np.complex128, copy=True).reshape(-1)
        if v.size != self.reg.dim:
            raise ArgumentError(f"{v.size} amplitudes do not fit register {self.reg} (dim {self.reg.dim})")
        norm2 = float(np.vdot(v, v).real)
        if abs(norm2 - 1.0) > config.TRACE_TOL:
            raise ArgumentError(f"state norm^2 is {norm2:.12g}, expected 1")
        v.setflags(write=False)
        object.__setattr__(self, "amps", v)

    @classmethod
    def from_terms(cls, reg: QRegister, terms: dict[tuple[int, ...], complex]) -> "PureState":
        """Build from ``{(i_1, ..., i_k): amplitude}`` in register order."""
        psi = np.zeros(reg.dims, dtype=np.complex128)
        for idx, amp in terms.items():
            psi[tuple(idx)] += amp
        return cls(psi.reshape(-1), reg)

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per factor."""
        return self.amps.reshape(self.reg.dims)

    def density(self) -> DensityMatrix:
        return DensityMatrix.from_pure(self.amps, self.reg)

    def reduce(self, keep: Iterable[str]) -> DensityMatrix:
        """Reduced density matrix on ``keep`` without forming the projector."""
        keep = self.reg.check_labels(keep)
        if not keep:
            raise ArgumentError("reduce needs a non-empty set of labels to keep")
        kept = [i for i, lab in enumerate(self.reg.labels) if lab in keep]
        rest = [i for i, lab in enumerate(self.reg.labels) if lab not in keep]
        sub = self.reg.subset(keep)
        m = np.transpose(self.tensor(), kept + rest).reshape(sub.dim, -1)
        return DensityMatrix(m @ m.conj().T, sub)

    def overlap(self, other: "PureState") -> complex:
        return complex(np.vdot(self.amps, other.amps))


State = Union[DensityMatrix, PureState]


@dataclass(frozen=True)
class Bipartition:
    """Two disjoint label sets; together they must cover the state's register."""

    left: frozenset[str]
    right: frozenset[str]

    def __post_init__(self):
        left, right = frozenset(self.left), frozenset(self.right)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        if not left or not right:
            raise ArgumentError("both sides of a bipartition must be non-empty")
        if left & right:
            raise ArgumentError(f"bipartition sides overlap on {sorted(left & right)}")

    @classmethod
    def of(cls, left: str | Iterable[str], right: str | Iterable[str]) -> "Bipartition":
        """``Bipartition.of("A", "B")`` or ``Bipartition.of("A", ["B", "C"])``."""
        left = {left} if isinstance(left, str) else set(left)
        right = {right} if isinstance(right, str) else set(right)
        return cls(frozenset(left), frozenset(right))

    def swapped(self) -> "Bipartition":
        return Bipartition(self.right, self.left)

    def check(self, reg: QRegister) -> None:
        try:
            reg.check_labels(self.left | self.right)
        except LabelError as exc:
            raise ArgumentError(f"invalid bipartition: {exc}") from None
        if set(self.left | self.right) != set(reg.labels):
            raise ArgumentError(
                f"bipartition {sorted(self.left)}|{sorted(self.right)} does not cover register {reg}"
            )


def _log(x):
    return np.log(x) / math.log(config.LOG_BASE)


def entropy_of_spectrum(lam) -> float:
    """Shannon entropy of an eigenvalue list, with ``0 log 0 = 0``."""
    p = np.asarray(lam, dtype=float)
    p = p[p > config.SPECTRUM_CUTOFF]
    return float(max(-np.sum(p * _log(p)), 0.0))


def renyi_of_spectrum(lam, xi: float) -> float:
    """Renyi entropy of order ``xi`` of an eigenvalue list."""
    xi = _check_xi(xi)
    if xi == 1.0:
        return entropy_of_spectrum(lam)
    p = np.asarray(lam, dtype=float)
    p = p[p > config.SPECTRUM_CUTOFF]
    # renormalize so that trace rounding is not amplified by 1/(1 - xi)
    p = p / np.sum(p)
    # sum p^xi = 1 + sum p (p^(xi-1) - 1); expm1/log1p keep xi -> 1 stable
    d = xi - 1.0
    excess = float(np.sum(p * np.expm1(d * np.log(p))))
    return float(-math.log1p(excess) / d / math.log(config.LOG_BASE))


def _check_xi(xi) -> float:
    xi = float(xi)
    if not math.isfinite(xi) or xi <= 0.0:
        raise ArgumentError(f"Renyi index must be finite and > 0, got {xi!r}")
    return xi


def _marginal(state: State, labels: Iterable[str]) -> DensityMatrix:
    labels = frozenset(labels)
    if isinstance(state, PureState):
        return state.reduce(labels)
    if labels == frozenset(state.reg.labels):
        return state
    return partial_trace(state, labels)


def _entropy_of(state: State, labels) -> float:
    labels = frozenset(labels)
    if not labels:
        return 0.0
    if isinstance(state, PureState) and labels == frozenset(state.reg.labels):
        return 0.0
    return entropy_of_spectrum(_marginal(state, labels).spectrum)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """``-Tr rho log rho``."""
    return entropy_of_spectrum(rho.spectrum)


def renyi_entropy(rho: DensityMatrix, xi: float) -> float:
    """``log(Tr rho^xi) / (1 - xi)``; the von Neumann entropy at ``xi == 1``."""
    return renyi_of_spectrum(rho.spectrum, xi)


def subsystem_entropy(state: State, labels: Iterable[str]) -> float:
    """Von Neumann entropy of the marginal on ``labels``."""
    return _entropy_of(state, state.reg.check_labels(labels))


def mutual_information(rho: DensityMatrix, part: Bipartition) -> float:
    """``S(left) + S(right) - S(left, right)``."""
    part.check(rho.reg)
    return _entropy_of(rho, part.left) + _entropy_of(rho, part.right) - von_neumann_entropy(rho)


def conditional_mutual_information(state: State, a, c, b=()) -> float:
    """``I(a:c|b) = S(ab) + S(bc) - S(abc) - S(b)``.

    Labels outside ``a | b | c`` are traced out first. ``b`` may be empty,
    in which case this is the plain mutual information ``I(a:c)``.
    """
    a, b, c = (frozenset({x}) if isinstance(x, str) else frozenset(x) for x in (a, b, c))
    if not a or not c:
        raise ArgumentError("conditional mutual information needs non-empty a and c")
    if (a & b) or (a & c) or (b & c):
        raise ArgumentError(f"label sets overlap: a={sorted(a)} b={sorted(b)} c={sorted(c)}")
    try:
        state.reg.check_labels(a | b | c)
    except LabelError as exc:
        raise ArgumentError(str(exc)) from None
    return (
        _entropy_of(state, a | b)
        + _entropy_of(state, b | c)
        - _entropy_of(state, a | b | c)
        - _entropy_of(state, b)
    )


def canonical_purification(rho: DensityMatrix, part: Bipartition | None = None) -> PureState:
    """The pure state ``|sqrt(rho)>`` on the register doubled with starred copies.

    Row indices of ``sqrt(rho)`` become the unstarred factors and column
    indices the starred ones, both in the order of ``rho.reg``.
    """
    if part is not None:
        part.check(rho.reg)
    root = psd_sqrt(rho)
    amps = root.reshape(-1)
    amps = amps / math.sqrt(float(np.vdot(amps, amps).real))
    return PureState(amps, rho.reg + rho.reg.mirrored())


def reflected_density(rho: DensityMatrix, part: Bipartition) -> DensityMatrix:
    """``rho_{L L*}``: the purification reduced to the left side and its mirror."""
    psi = canonical_purification(rho, part)
    return psi.reduce(set(part.left) | {mirror_label(lab) for lab in part.left})


def reflected_spectrum(rho: DensityMatrix, part: Bipartition) -> np.ndarray:
    """Eigenvalues of ``rho_{L L*}``, descending."""
    return reflected_density(rho, part).spectrum


def reflected_entropy(rho: DensityMatrix, part: Bipartition) -> float:
    """``S_R(left:right)``."""
    return entropy_of_spectrum(reflected_spectrum(rho, part))


def renyi_reflected_entropy(rho: DensityMatrix, part: Bipartition, xi: float) -> float:
    """Renyi entropy of order ``xi`` of ``rho_{L L*}`` from the canonical purification."""
    xi = _check_xi(xi)
    return renyi_of_spectrum(reflected_spectrum(rho, part), xi)


def markov_gap(rho: DensityMatrix, part: Bipartition) -> float:
    """``S_R(left:right) - I(left:right)``."""
    return reflected_entropy(rho, part) - mutual_information(rho, part)


def markov_gap_via_cmi(rho: DensityMatrix, part: Bipartition) -> float:
    """The Markov gap as ``I(left : right* | right)`` on the purification."""
    psi = canonical_purification(rho, part)
    right_star = {mirror_label(lab) for lab in part.right}
    return conditional_mutual_information(psi, part.left, right_star, part.right)


def fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Uhlmann fidelity ``(Tr sqrt(sqrt(rho) sigma sqrt(rho)))**2``.

    Evaluated as the squared trace norm of ``sqrt(rho) sqrt(sigma)``; the
    singular values are read off the Hermitian dilation so that zero
    singular values stay at rounding level instead of ``sqrt(eps)``.
    """
    if rho.dim != sigma.dim:
        raise ArgumentError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")
    m = psd_sqrt(rho) @ psd_sqrt(sigma)
    n = m.shape[0]
    dilation = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    dilation[:n, n:] = m
    dilation[n:, :n] = m.conj().T
    trace_norm = 0.5 * float(np.sum(np.abs(hermitian_eig(dilation).eigenvalues)))
    return min(max(trace_norm**2, 0.0), 1.0)


@dataclass(frozen=True)
class MeasureReport:
    s_left: float
    s_right: float
    s_joint: float
    mutual_information: float
    reflected_entropy: float
    markov_gap: float
    bound_upper: float
    bound_lower: float

    def __post_init__(self):
        slack = 1e-9
        if not (self.bound_upper + slack >= self.reflected_entropy >= self.bound_lower - slack):
            raise InvariantError(
                f"reflected entropy {self.reflected_entropy:.12g} outside "
                f"[{self.bound_lower:.12g}, {self.bound_upper:.12g}]"
            )


def bounds_report(rho: DensityMatrix, part: Bipartition) -> MeasureReport:
    """Entropies, S_R, I, h and the bounds ``min(2S_L, 2S_R) >= S_R >= I``."""
    part.check(rho.reg)
    s_l = _entropy_of(rho, part.left)
    s_r = _entropy_of(rho, part.right)
    s_j = von_neumann_entropy(rho)
    mi = s_l + s_r - s_j
    sr = reflected_entropy(rho, part)
    return MeasureReport(
        s_left=s_l,
        s_right=s_r,
        s_joint=s_j,
        mutual_information=mi,
        reflected_entropy=sr,
        markov_gap=sr - mi,
        bound_upper=min(2 * s_l, 2 * s_r),
        bound_lower=mi,
    )

"""Bell, W and GHZ modes seen by a uniformly accelerated Bob.

Bob's Minkowski mode is mapped onto a pair of Rindler modes, ``B`` (region I)
and ``Bbar`` (region II), by the single-mode fermionic isometry

    |0> -> cos r |0>|0> + sin r |1>|1>,    |1> -> |1>|0>,

with the Bogoliubov phase set to zero. ``r`` runs over ``[0, pi/4]``; the
closed endpoint ``pi/4`` stands for infinite acceleration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np

from reflectent.entropy import (
    Bipartition,
    PureState,
    bounds_report,
    reflected_entropy,
)
from reflectent.errors import ArgumentError
from reflectent.linalg import DensityMatrix, QRegister

R_MAX = math.pi / 4
FAMILIES = ("bell", "werner", "ghz")
_ALPHA_MAX = {"bell": 1.0, "werner": 1.0 / math.sqrt(2.0), "ghz": 1.0}
_ALPHA_MAXIMAL = {"bell": 1.0 / math.sqrt(2.0), "werner": 1.0 / math.sqrt(3.0), "ghz": 1.0 / math.sqrt(2.0)}
_ALIASES = {"w": "werner", "b": "bell"}


def _kind(name: str) -> str:
    k = str(name).strip().lower()
    k = _ALIASES.get(k, k)
    if k not in FAMILIES:
        raise ArgumentError(f"unknown state family {name!r}; choose from {', '.join(FAMILIES)}")
    return k


@dataclass(frozen=True)
class StateFamily:
    """One of the inertial states with its weight ``alpha``.

    The closed interval is admitted (``alpha = 0`` or the upper end), since
    the boundary states are still normalized and the alpha sweeps evaluate
    them.
    """

    kind: str
    alpha: float

    def __post_init__(self):
        kind = _kind(self.kind)
        object.__setattr__(self, "kind", kind)
        a = float(self.alpha)
        hi = _ALPHA_MAX[kind]
        if not (0.0 <= a <= hi + 1e-15) or not math.isfinite(a):
            raise ArgumentError(f"alpha={a!r} outside [0, {hi:.6g}] for the {kind} family")
        object.__setattr__(self, "alpha", min(a, hi))

    @classmethod
    def maximal(cls, kind: str) -> "StateFamily":
        """The maximally entangled member: 1/sqrt(2) for Bell/GHZ, 1/sqrt(3) for W."""
        kind = _kind(kind)
        return cls(kind, _ALPHA_MAXIMAL[kind])

    @property
    def labels(self) -> tuple[str, ...]:
        return ("A", "B", "Bbar") if self.kind == "bell" else ("A", "B", "Bbar", "C")

    def with_alpha(self, alpha: float) -> "StateFamily":
        return replace(self, alpha=alpha)


def default_alpha(kind: str) -> float:
    return _ALPHA_MAXIMAL[_kind(kind)]


@dataclass(frozen=True)
class AccelerationParams:
    """Kinematics of Bob's detector, in units with hbar = k_B = c = 1."""

    r: float
    omega: float
    T: float
    a: float

    @classmethod
    def from_acceleration(cls, omega: float, a: float) -> "AccelerationParams":
        _positive(omega=omega)
        if a < 0:
            raise ArgumentError(f"acceleration must be >= 0, got {a}")
        if a == 0:
            return cls(0.0, omega, 0.0, 0.0)
        if math.isinf(a):
            return cls(R_MAX, omega, math.inf, math.inf)
        return cls(math.atan(math.exp(-math.pi * omega / a)), omega, a / (2 * math.pi), a)

    @classmethod
    def from_temperature(cls, omega: float, T: float) -> "AccelerationParams":
        return cls(acceleration_parameter(omega, T), omega, T, 2 * math.pi * T)


def _positive(**values):
    for name, v in values.items():
        if not (v > 0) or not math.isfinite(v):
            raise ArgumentError(f"{name} must be a finite positive number, got {v!r}")


def acceleration_parameter(omega: float, T: float) -> float:
    """``r = arctan(exp(-omega / 2T))`` in radians."""
    _positive(omega=omega, T=T)
    return math.atan(math.exp(-omega / (2.0 * T)))


def unruh_occupancy(omega: float, T: float) -> float:
    """Fermi-Dirac count ``1 / (1 + exp(omega / T))`` seen by Bob's detector."""
    _positive(omega=omega, T=T)
    x = omega / T
    if x > 700:
        return math.exp(-x)
    return 1.0 / (1.0 + math.exp(x))


def _check_r(r: float) -> float:
    r = float(r)
    if not (0.0 <= r <= R_MAX + 1e-12):
        raise ArgumentError(f"acceleration parameter r={r!r} outside [0, pi/4]")
    return min(r, R_MAX)


def bogoliubov_isometry(r: float) -> np.ndarray:
    """4x2 map from Bob's Minkowski qubit to (B, Bbar); rows ordered |B Bbar>."""
    c, s = math.cos(r), math.sin(r)
    u = np.zeros((4, 2))
    u[0b00, 0] = c
    u[0b11, 0] = s
    u[0b10, 1] = 1.0
    return u


def build_inertial(family: StateFamily) -> PureState:
    """The family's state before Bob accelerates, on (A, B) or (A, B, C)."""
    a = family.alpha
    if family.kind == "bell":
        reg = QRegister.qubits("A", "B")
        terms = {(0, 0): a, (1, 1): math.sqrt(max(1 - a * a, 0.0))}
    elif family.kind == "werner":
        reg = QRegister.qubits("A", "B", "C")
        terms = {(1, 0, 0): a, (0, 0, 1): a, (0, 1, 0): math.sqrt(max(1 - 2 * a * a, 0.0))}
    else:
        reg = QRegister.qubits("A", "B", "C")
        terms = {(0, 0, 0): a, (1, 1, 1): math.sqrt(max(1 - a * a, 0.0))}
    return PureState.from_terms(reg, terms)


def accelerate_bob(psi: PureState, r: float) -> PureState:
    """Apply the Rindler isometry to factor ``B`` and insert ``Bbar`` right after it."""
    r = _check_r(r)
    if "B" not in psi.reg:
        raise ArgumentError(f"state has no factor 'B': register {psi.reg}")
    if "Bbar" in psi.reg:
        raise ArgumentError("state already carries a 'Bbar' factor")
    ib = psi.reg.index("B")
    if psi.reg.dims[ib] != 2:
        raise ArgumentError("factor 'B' must be a qubit")
    u = bogoliubov_isometry(r).reshape(2, 2, 2)  # (B, Bbar, B_in)
    t = np.tensordot(psi.tensor(), u, axes=([ib], [2]))  # B_in axis replaced at the end
    t = np.moveaxis(t, [-2, -1], [ib, ib + 1])
    factors = list(psi.reg.factors)
    factors[ib : ib + 1] = [("B", 2), ("Bbar", 2)]
    return PureState(t.reshape(-1), QRegister(tuple(factors)))


def accelerated_state(family: StateFamily, r: float) -> PureState:
    """Global pure state on (A, B, Bbar) or (A, B, Bbar, C)."""
    return accelerate_bob(build_inertial(family), r)


@dataclass(frozen=True)
class PairSelector:
    """Named choice of subsystems: a bipartition, or a single party."""

    name: str
    left: tuple[str, ...]
    right: tuple[str, ...] = ()

    @property
    def labels(self) -> frozenset[str]:
        return frozenset(self.left + self.right)

    @property
    def is_pair(self) -> bool:
        return bool(self.right)

    @property
    def bipartition(self) -> Bipartition:
        if not self.is_pair:
            raise ArgumentError(f"selector {self.name!r} names a single party, not a pair")
        return Bipartition.of(self.left, self.right)


SELECTORS = {
    s.name: s
    for s in (
        PairSelector("AB", ("A",), ("B",)),
        PairSelector("ABbar", ("A",), ("Bbar",)),
        PairSelector("BBbar", ("B",), ("Bbar",)),
        PairSelector("A_BBbar", ("A",), ("B", "Bbar")),
        PairSelector("A_BC", ("A",), ("B", "C")),
        PairSelector("A_BbarC", ("A",), ("Bbar", "C")),
        PairSelector("A_BBbarC", ("A",), ("B", "Bbar", "C")),
        PairSelector("AC", ("A",), ("C",)),
        PairSelector("BC", ("B",), ("C",)),
        PairSelector("BbarC", ("Bbar",), ("C",)),
        PairSelector("A", ("A",)),
        PairSelector("B", ("B",)),
        PairSelector("Bbar", ("Bbar",)),
        PairSelector("C", ("C",)),
    )
}


def selector(sel: str | PairSelector) -> PairSelector:
    if isinstance(sel, PairSelector):
        return sel
    try:
        return SELECTORS[sel]
    except KeyError:
        raise ArgumentError(f"unknown selector {sel!r}; choose from {', '.join(SELECTORS)}") from None


def reduced_state(family: StateFamily, r: float, sel: str | PairSelector) -> DensityMatrix:
    """Reduced density matrix of the accelerated state on the selected parties."""
    sel = selector(sel)
    missing = sorted(sel.labels - set(family.labels))
    if missing:
        raise ArgumentError(f"selector {sel.name!r} needs {missing}, absent from the {family.kind} register")
    return accelerated_state(family, r).reduce(sel.labels)


@dataclass(frozen=True)
class SweepRecord:
    """One row of a parameter sweep; all information quantities in bits."""

    family: str
    alpha: float
    variable: str
    value: float
    pair: str
    S_R: float
    I: float
    h: float
    bound_lo: float
    bound_hi: float


SWEEP_FIELDS = ("family", "alpha", "variable", "value", "pair", "S_R", "I", "h", "bound_lo", "bound_hi")
SWEEP_VARIABLES = ("r", "T", "alpha")


def _record(family: StateFamily, r: float, sel: PairSelector, variable: str, value: float) -> SweepRecord:
    rep = bounds_report(reduced_state(family, r, sel), sel.bipartition)
    return SweepRecord(
        family=family.kind,
        alpha=family.alpha,
        variable=variable,
        value=float(value),
        pair=sel.name,
        S_R=rep.reflected_entropy,
        I=rep.mutual_information,
        h=rep.reflected_entropy - rep.mutual_information,
        bound_lo=rep.bound_lower,
        bound_hi=rep.bound_upper,
    )


def measure_sweep(family: StateFamily, sel: str | PairSelector, r_grid: Iterable[float]) -> list[SweepRecord]:
    """S_R, I, h and the bounds at every ``r`` of the grid, sorted by ``r``."""
    sel = selector(sel)
    grid = sorted(_check_r(r) for r in r_grid)
    return [_record(family, r, sel, "r", r) for r in grid]


def sweep(
    kind: str,
    selectors: Sequence[str | PairSelector],
    variable: str,
    values: Iterable[float],
    *,
    alpha: float | None = None,
    r: float | None = None,
    omega: float | None = None,
) -> list[SweepRecord]:
    """General sweep over ``r``, Unruh temperature ``T`` or weight ``alpha``.

    Rows are ordered by grid value, then by selector in the order given.
    ``T`` sweeps need ``omega``; ``alpha`` sweeps need a fixed ``r``.
    """
    if variable not in SWEEP_VARIABLES:
        raise ArgumentError(f"unknown sweep variable {variable!r}; choose from {', '.join(SWEEP_VARIABLES)}")
    sels = [selector(s) for s in selectors]
    base = StateFamily(kind, default_alpha(kind) if alpha is None else alpha)
    out = []
    for v in sorted(float(x) for x in values):
        if variable == "r":
            fam, rv = base, _check_r(v)
        elif variable == "T":
            if omega is None:
                raise ArgumentError("a temperature sweep needs omega")
            fam, rv = base, acceleration_parameter(omega, v)
        else:
            fam, rv = base.with_alpha(v), _check_r(0.0 if r is None else r)
        out.extend(_record(fam, rv, s, variable, v) for s in sels)
    return out


def reflected_entropy_ab(family: StateFamily, r: float) -> float:
    return reflected_entropy(reduced_state(family, r, "AB"), Bipartition.of("A", "B"))


def sigma_function(family: StateFamily, omega: float, T: float, rel_step: float = 1e-4) -> float:
    """``(1/omega) dS_R(A:B)/d(1/T)`` by a central difference in ``u = 1/T``."""
    _positive(omega=omega, T=T)
    u = 1.0 / T
    h = rel_step * u

    def s_of_u(uu):
        return reflected_entropy_ab(family, math.atan(math.exp(-omega * uu / 2.0)))

    return (s_of_u(u + h) - s_of_u(u - h)) / (2.0 * h * omega)


def polygamy_gap(family: StateFamily, r: float) -> float:
    """``S_R(A:B) + S_R(A:rest) - S_R(A:B rest)`` where rest is Bbar (Bell) or Bbar C."""
    r = _check_r(r)
    psi = accelerated_state(family, r)
    if family.kind == "bell":
        pairs = [("B",), ("Bbar",), ("B", "Bbar")]
    else:
        pairs = [("B",), ("Bbar", "C"), ("B", "Bbar", "C")]
    vals = []
    for right in pairs:
        rho = psi.reduce({"A", *right})
        vals.append(reflected_entropy(rho, Bipartition.of("A", right)))
    return vals[0] + vals[1] - vals[2]

"""Self-check suite behind ``reflectent verify``.

Each check compares a computed value with an expectation at a tolerance.
Checks carrying ``known`` text document a literature claim that the
computation contradicts; they are reported but do not fail the run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from reflectent import closed_forms, rindler
from reflectent.counterexample import CounterexampleParams, scan_state, scan_xi, violation_right_edge
from reflectent.entropy import (
    Bipartition,
    bounds_report,
    canonical_purification,
    markov_gap,
    markov_gap_via_cmi,
    reflected_density,
    reflected_entropy,
)
from reflectent.linalg import DensityMatrix, QRegister

SCOPES = ("all", "values", "linalg", "entropy", "rindler", "counterexample", "sigma")


@dataclass
class Check:
    name: str
    expected: str
    got: float
    tol: float
    passed: bool
    known: str | None = None

    @property
    def status(self) -> str:
        if self.known:
            return "KNOWN-PASS" if self.passed else "KNOWN"
        return "PASS" if self.passed else "FAIL"

    def line(self) -> str:
        s = f"[{self.status}] {self.name}: expected {self.expected}, got {self.got + 0.0:.12g} (tol {self.tol:g})"
        if self.known and not self.passed:
            s += f" -- {self.known}"
        return s


def _t(tol, default):
    return default if tol is None else tol


def _near(name, expected, got, tol, known=None):
    return Check(name, f"{expected:.12g}", float(got), tol, abs(got - expected) <= tol, known)


def _at_least(name, bound, got, tol, known=None):
    return Check(name, f">= {bound:.12g}", float(got), tol, got >= bound - tol, known)


def _at_most(name, bound, got, tol, known=None):
    return Check(name, f"<= {bound:.12g}", float(got), tol, got <= bound + tol, known)


def isospectral_pair():
    reg = QRegister.qubits("A", "B")
    rho1 = DensityMatrix(np.array([[1, 0, 0, 0], [0, 1, 1, 0], [0, 1, 1, 0], [0, 0, 0, 0]]) / 3, reg)
    rho2 = DensityMatrix(np.diag([1.0, 0, 0, 2]) / 3, reg)
    return rho1, rho2


def random_density(rng: np.random.Generator, dims=(2, 2), labels=("A", "B"), rank=None) -> DensityMatrix:
    """Random mixed state from a Ginibre matrix; full rank unless ``rank`` is given."""
    d = math.prod(dims)
    k = rank or d
    g = rng.normal(size=(d, k)) + 1j * rng.normal(size=(d, k))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real, QRegister(tuple(zip(labels, dims))))


def value_checks(tol=None) -> Iterator[Check]:
    rho1, rho2 = isospectral_pair()
    ab = Bipartition.of("A", "B")
    yield _near("S_R(rho1) isospectral W reduction", 1.49, reflected_entropy(rho1, ab), _t(tol, 0.01))
    yield _near("S_R(rho2) isospectral GHZ reduction", 0.92, reflected_entropy(rho2, ab), _t(tol, 0.01))
    spread = float(np.max(np.abs(rho1.spectrum - rho2.spectrum)))
    yield _at_most("rho1/rho2 spectra coincide", 0.0, spread, _t(tol, 1e-12))
    rep = bounds_report(rindler.reduced_state(rindler.StateFamily.maximal("bell"), 0.0, "AB"), ab)
    for field in ("reflected_entropy", "mutual_information", "bound_upper"):
        yield _near(f"Bell r=0 {field}", 2.0, getattr(rep, field), _t(tol, 1e-9))
    yield _near("Bell r=0 Markov gap", 0.0, rep.markov_gap, _t(tol, 1e-9))


def linalg_checks(tol=None, n_random=50, seed=7) -> Iterator[Check]:
    rng = np.random.default_rng(seed)
    worst_rt = worst_norm = 0.0
    for i in range(n_random):
        dims = (2, 2) if i % 2 == 0 else (2, 3)
        rho = random_density(rng, dims)
        psi = canonical_purification(rho, Bipartition.of("A", "B"))
        back = psi.reduce({"A", "B"})
        worst_rt = max(worst_rt, float(np.max(np.abs(back.mat - rho.mat))))
        worst_norm = max(worst_norm, abs(float(np.vdot(psi.amps, psi.amps).real) - 1.0))
    yield _at_most("purification reduces back to rho", 0.0, worst_rt, _t(tol, 1e-9))
    yield _at_most("purification is normalized", 0.0, worst_norm, _t(tol, 1e-10))


def entropy_checks(tol=None, n_random=1000, seed=11) -> Iterator[Check]:
    rng = np.random.default_rng(seed)
    ab = Bipartition.of("A", "B")
    lo = hi = h_min = math.inf
    cmi_err = sym_err = 0.0
    for i in range(n_random):
        rho = random_density(rng, rank=1 + i % 4)
        rep = bounds_report(rho, ab)
        hi = min(hi, rep.bound_upper - rep.reflected_entropy)
        lo = min(lo, rep.reflected_entropy - rep.bound_lower)
        h_min = min(h_min, rep.markov_gap)
        if i < 100:
            cmi_err = max(cmi_err, abs(rep.markov_gap - markov_gap_via_cmi(rho, ab)))
            sym_err = max(sym_err, abs(rep.reflected_entropy - reflected_entropy(rho, ab.swapped())))
    yield _at_least(f"upper bound min(2S_A,2S_B) - S_R over {n_random} states", 0.0, hi, _t(tol, 1e-9))
    yield _at_least(f"S_R - I over {n_random} states", 0.0, lo, _t(tol, 1e-9))
    yield _at_least(f"Markov gap over {n_random} states", 0.0, h_min, _t(tol, 1e-9))
    yield _at_most("h(A:B) = I(A:B*|B) on the purification", 0.0, cmi_err, _t(tol, 1e-8))
    yield _at_most("S_R(A:B) = S_R(B:A)", 0.0, sym_err, _t(tol, 1e-8))


def rindler_checks(tol=None, n_random=20, seed=3, n_grid=50) -> Iterator[Check]:
    rng = np.random.default_rng(seed)
    for kind in rindler.FAMILIES:
        worst = 0.0
        for _ in range(n_random):
            fam = rindler.StateFamily(kind, rng.uniform(0.05, 0.95) * rindler._ALPHA_MAX[kind])
            r = rng.uniform(0, rindler.R_MAX)
            for sel, ref in closed_forms.reduced(kind, fam.alpha, r).items():
                got = rindler.reduced_state(fam, r, sel).mat
                worst = max(worst, float(np.max(np.abs(got - ref))))
        yield _at_most(f"{kind}: reduced states equal closed forms", 0.0, worst, _t(tol, 1e-10))

    worst = 0.0
    fam_pts = [(1 / math.sqrt(2), 0.0)] + [(rng.uniform(0.05, 0.95), rng.uniform(0, rindler.R_MAX)) for _ in range(9)]
    for alpha, r in fam_pts:
        fam = rindler.StateFamily("bell", alpha)
        ref = closed_forms.bell_reflected(alpha, r)
        for pair in ("AB", "ABbar", "BBbar"):
            sel = rindler.SELECTORS[pair]
            got = reflected_density(rindler.reduced_state(fam, r, sel), sel.bipartition).mat
            worst = max(worst, float(np.max(np.abs(got - ref[pair]))))
    yield _at_most("bell: rho_XX* equal hand-derived matrices", 0.0, worst, _t(tol, 1e-10))

    grid = np.linspace(0.0, rindler.R_MAX, n_grid)
    slack = _t(tol, 1e-10)
    for kind in rindler.FAMILIES:
        fam = rindler.StateFamily.maximal(kind)
        rec = {p: rindler.measure_sweep(fam, p, grid) for p in ("AB", "ABbar", "BBbar")}
        sr = {p: np.array([x.S_R for x in v]) for p, v in rec.items()}
        h = {p: np.array([x.h for x in v]) for p, v in rec.items()}
        yield _at_most(f"{kind}: S_R(A:B) non-increasing in r (max step)", 0.0, np.diff(sr["AB"]).max(), slack)
        for p in ("ABbar", "BBbar"):
            yield _at_least(f"{kind}: S_R({p}) non-decreasing in r (min step)", 0.0, np.diff(sr[p]).min(), slack)
        yield _near(f"{kind}: S_R(A:B) = S_R(A:Bbar) at r=pi/4", sr["AB"][-1], sr["ABbar"][-1], _t(tol, 1e-9))
        if kind == "werner":
            yield _at_most("werner: h(A:B) non-increasing in r (max step)", 0.0, np.diff(h["AB"]).max(), slack)
            yield _near("werner: h(A:B) = h(A:Bbar) at r=pi/4", h["AB"][-1], h["ABbar"][-1], _t(tol, 1e-9))
        else:
            yield _at_most(f"{kind}: h(A:B) vanishes at r=0", 0.0, abs(h["AB"][0]), _t(tol, 1e-9))
            for p in ("AB", "ABbar", "BBbar"):
                known = _H_PEAK.get((kind, p))
                yield _at_least(f"{kind}: h({p}) non-decreasing in r (min step)", 0.0, np.diff(h[p]).min(), slack, known)
        bmin = min(min(x.bound_hi - x.S_R, x.S_R - x.bound_lo) for v in rec.values() for x in v)
        yield _at_least(f"{kind}: bounds hold on the r grid", 0.0, bmin, _t(tol, 1e-9))
        hmin = min(float(v.min()) for v in h.values())
        yield _at_least(f"{kind}: Markov gap non-negative on the r grid", 0.0, hmin, _t(tol, 1e-9))
        poly = min(rindler.polygamy_gap(fam, r) for r in grid)
        yield _at_least(f"{kind}: polygamy gap non-negative", 0.0, poly, _t(tol, 1e-9))


_H_PEAK = {
    ("bell", "ABbar"): "h(A:Bbar) peaks near r=0.737 and falls about 2e-3 bits by pi/4",
    ("ghz", "AB"): "h(A:B) peaks near r=0.715 and falls about 3e-3 bits by pi/4",
}


def counterexample_checks(tol=None, n_xi=200) -> Iterator[Check]:
    xis = np.linspace(0.01, 1.99, n_xi)
    edges = []
    for a in (0.5, 0.75, 1.0, 1.5):
        recs = scan_xi(CounterexampleParams(3, 2, a, 0.5), xis)
        g = min(r.gap for r in recs)
        known = "no violation when a = b; the gap is positive on all of (0, 2)" if a == 0.5 else None
        yield Check(f"(3,2,a={a},b=0.5): min gap over xi < 0", "< 0", g, 0.0, g < 0, known)
        edges.append(violation_right_edge(recs))
    found = [e for e in edges if e is not None]
    ok = all(x <= y for x, y in zip(found, found[1:]))
    yield Check("violation right edge non-decreasing in a/b", "monotone", float(ok), 0.0, ok)
    for n, m in ((3, 2), (2, 2)):
        g = min(r.gap for r in scan_xi(CounterexampleParams(n, m, 1.5, 0.5), xis))
        yield Check(f"({n},{m},1.5,0.5): violation exists", "< 0", g, 0.0, g < 0)
    slack = _t(tol, 1e-10)
    grid_xi = np.linspace(0.1, 2.0, 20)
    for kind in rindler.FAMILIES:
        fam = rindler.StateFamily.maximal(kind)
        worst = math.inf
        for r in np.linspace(0.0, rindler.R_MAX, 20):
            rho = rindler.accelerated_state(fam, r).reduce({"A", "B", "Bbar"})
            worst = min(worst, min(x.gap for x in scan_state(rho, grid_xi, labels=("A", "B", "Bbar"))))
        yield _at_least(f"{kind}: S_R^xi(A:B Bbar) - S_R^xi(A:B) on the (r, xi) grid", 0.0, worst, slack)


def sigma_checks(tol=None) -> Iterator[Check]:
    temps = np.logspace(-1, 3, 100)
    for kind in rindler.FAMILIES:
        fam = rindler.StateFamily.maximal(kind)
        plateau = []
        for omega in (10.0, 20.0, 30.0, 40.0):
            s = np.array([rindler.sigma_function(fam, omega, t) for t in temps])
            known = _SIGMA_PEAK if kind == "werner" else None
            yield _at_least(f"{kind}: sigma non-decreasing in T, omega={omega:g}", 0.0, np.diff(s).min(), _t(tol, 1e-10), known)
            yield _at_most(f"{kind}: sigma(T=omega/50) ~ 0, omega={omega:g}", 0.0, abs(rindler.sigma_function(fam, omega, omega / 50)), _t(tol, 1e-6))
            plateau.append(rindler.sigma_function(fam, omega, 1e6 * omega))
        yield _at_most(f"{kind}: large-T plateau independent of omega", 0.0, max(plateau) - min(plateau), _t(tol, 1e-3))


_SIGMA_PEAK = "sigma peaks near T = 10 omega and relaxes about 5e-4 to its plateau"

_SUITES: dict[str, Callable[..., Iterator[Check]]] = {
    "values": value_checks,
    "linalg": linalg_checks,
    "entropy": entropy_checks,
    "rindler": rindler_checks,
    "counterexample": counterexample_checks,
    "sigma": sigma_checks,
}


def run(scope: str = "all", tol: float | None = None) -> list[Check]:
    if scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}; choose from {', '.join(SCOPES)}")
    names = list(_SUITES) if scope == "all" else [scope]
    out = []
    for name in names:
        out.extend(_SUITES[name](tol=tol))
    return out


def failures(checks: list[Check]) -> list[Check]:
    return [c for c in checks if not c.passed and not c.known]

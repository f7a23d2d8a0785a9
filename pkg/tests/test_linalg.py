import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import ptrace, random_density, sqrtm_psd
from reflectent import config
from reflectent.errors import ArgumentError, LabelError, NotHermitianError, NotPSDError
from reflectent.linalg import (
    DensityMatrix,
    QRegister,
    allclose,
    clamp_spectrum,
    mirror_label,
    partial_trace,
    partial_trace_matrix,
    product,
    psd_sqrt,
    sqrt_psd_matrix,
    tensor,
)


class TestRegister:
    def test_basics(self):
        reg = QRegister.of(("A", 2), ("B", 3), ("C", 2))
        assert reg.labels == ("A", "B", "C")
        assert reg.dims == (2, 3, 2) and reg.dim == 12
        assert reg.index("B") == 1 and reg.dim_of("B") == 3
        assert "C" in reg and "D" not in reg
        assert str(reg) == "(A:2,B:3,C:2)"

    def test_subset_keeps_order(self):
        reg = QRegister.qubits("A", "B", "Bbar", "C")
        assert reg.subset(["C", "A"]).labels == ("A", "C")

    def test_mirrored(self):
        reg = QRegister.of(("A", 2), ("Bbar", 3))
        assert reg.mirrored().labels == ("Astar", "Bbarstar")
        assert mirror_label("X") == "Xstar"
        assert (reg + reg.mirrored()).dims == (2, 3, 2, 3)

    @pytest.mark.parametrize(
        "factors, exc",
        [
            ((), ArgumentError),
            ((("A", 2), ("A", 2)), LabelError),
            ((("", 2),), LabelError),
            ((("A", 0),), ArgumentError),
        ],
    )
    def test_invalid(self, factors, exc):
        with pytest.raises(exc):
            QRegister(factors)

    def test_unknown_label(self):
        reg = QRegister.qubits("A", "B")
        with pytest.raises(LabelError, match="'Z'"):
            reg.index("Z")
        with pytest.raises(KeyError):
            reg.check_labels({"A", "Q"})


class TestDensityMatrix:
    def test_validation(self):
        reg = QRegister.qubits("A")
        with pytest.raises(ArgumentError, match="square"):
            DensityMatrix(np.ones((2, 3)) / 2, reg)
        with pytest.raises(ArgumentError, match="does not match"):
            DensityMatrix(np.eye(4) / 4, reg)
        with pytest.raises(ArgumentError, match="trace"):
            DensityMatrix(np.eye(2), reg)
        with pytest.raises(NotHermitianError):
            DensityMatrix(np.array([[0.5, 0.1], [0.0, 0.5]]), reg)
        with pytest.raises(NotPSDError):
            DensityMatrix(np.diag([1.5, -0.5]), reg)

    def test_rounding_negatives_clamped(self):
        rho = DensityMatrix(np.diag([1.0 + 1e-12, -1e-12]), QRegister.qubits("A"))
        assert rho.spectrum.min() == 0.0

    def test_immutable(self):
        rho = DensityMatrix.maximally_mixed(QRegister.qubits("A", "B"))
        with pytest.raises(ValueError):
            rho.mat[0, 0] = 1.0

    def test_normalized_and_pure(self):
        reg = QRegister.qubits("A")
        rho = DensityMatrix.normalized(np.diag([2.0, 6.0]), reg)
        assert np.allclose(rho.spectrum, [0.75, 0.25])
        pure = DensityMatrix.from_pure(np.array([1, 1j]) / math.sqrt(2), reg)
        assert np.allclose(pure.spectrum, [1, 0])
        with pytest.raises(ArgumentError):
            DensityMatrix.normalized(np.zeros((2, 2)), reg)

    def test_relabel(self):
        rho = DensityMatrix.maximally_mixed(QRegister.qubits("A", "B"))
        assert rho.relabel({"B": "C"}).reg.labels == ("A", "C")


@pytest.mark.parametrize(
    "dims, keep",
    [((2, 2), [0]), ((2, 2), [1]), ((2, 3, 2), [0, 2]), ((3, 2, 2), [1]), ((2, 2, 2, 2), [0, 1, 3])],
)
def test_partial_trace_matches_oracle(rng, dims, keep):
    labels = [f"L{i}" for i in range(len(dims))]
    reg = QRegister(tuple(zip(labels, dims)))
    mat = random_density(rng, int(np.prod(dims)))
    got = partial_trace(DensityMatrix(mat, reg), [labels[i] for i in keep])
    assert got.reg.labels == tuple(labels[i] for i in keep)
    assert allclose(got.mat, ptrace(mat, dims, keep), 1e-13)


def test_partial_trace_of_product(rng):
    a = DensityMatrix(random_density(rng, 2), QRegister.qubits("A"))
    b = DensityMatrix(random_density(rng, 3), QRegister.of(("B", 3)))
    ab = product(a, b)
    assert allclose(partial_trace(ab, ["A"]).mat, a.mat, 1e-14)
    assert allclose(partial_trace(ab, ["B"]).mat, b.mat, 1e-14)
    assert allclose(ab.mat, tensor(a.mat, b.mat), 0.0)


def test_partial_trace_errors():
    reg = QRegister.qubits("A", "B")
    with pytest.raises(ArgumentError):
        partial_trace_matrix(np.eye(4) / 4, reg, [])
    with pytest.raises(LabelError):
        partial_trace_matrix(np.eye(4) / 4, reg, ["C"])
    with pytest.raises(ArgumentError):
        product()


def test_psd_sqrt_projector_is_exact():
    v = np.array([1, 0, 0, 1]) / math.sqrt(2)
    rho = DensityMatrix.from_pure(v, QRegister.qubits("A", "B"))
    assert allclose(psd_sqrt(rho), rho.mat, 1e-15)


@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_property_sqrt_squares_back(d, rank, seed):
    rank = min(rank, d)
    m = random_density(np.random.default_rng(seed), d, rank=rank)
    root = sqrt_psd_matrix(m)
    assert allclose(root, root.conj().T, 1e-12)
    assert allclose(root @ root, m, 1e-10)
    assert allclose(root, sqrtm_psd(m), 1e-6)


def test_clamp_spectrum():
    assert np.array_equal(clamp_spectrum(np.array([0.5, -1e-9])), [0.5, 0.0])
    with pytest.raises(NotPSDError):
        clamp_spectrum(np.array([1.0, -1e-6]))


def test_set_tolerances(monkeypatch):
    for name, value in config.current().items():
        monkeypatch.setattr(config, name, value)
    config.set_tolerances(PSD_TOL=1e-4)
    assert config.PSD_TOL == 1e-4
    clamp_spectrum(np.array([1.0, -1e-6]))
    with pytest.raises(KeyError):
        config.set_tolerances(NOT_A_TOL=1)

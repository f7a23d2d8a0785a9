"""Reference implementations used only by the tests.

Everything here goes through ``numpy.linalg.eigh`` and explicit reshapes, so
it shares no code path with the Jacobi solver or the register machinery.
"""

import numpy as np


def random_density(rng, d=4, rank=None):
    k = rank or d
    g = rng.normal(size=(d, k)) + 1j * rng.normal(size=(d, k))
    m = g @ g.conj().T
    return m / np.trace(m).real


def ptrace(rho, dims, keep):
    """Keep the axes listed in ``keep`` (sorted) of a matrix on ``dims``."""
    n = len(dims)
    t = rho.reshape(tuple(dims) * 2)
    for ax in sorted(set(range(n)) - set(keep), reverse=True):
        t = np.trace(t, axis1=ax, axis2=ax + t.ndim // 2)
    d = int(np.prod([dims[i] for i in keep]))
    return t.reshape(d, d)


def sqrtm_psd(rho):
    w, v = np.linalg.eigh(rho)
    w = np.where(w > 1e-14, w, 0.0)
    return (v * np.sqrt(w)) @ v.conj().T


def entropy(rho, base=2.0):
    w = np.linalg.eigvalsh(rho)
    w = w[w > 1e-14]
    return float(-np.sum(w * np.log(w)) / np.log(base))


def renyi(rho, xi, base=2.0):
    w = np.linalg.eigvalsh(rho)
    w = w[w > 1e-14]
    if xi == 1:
        return float(-np.sum(w * np.log(w)) / np.log(base))
    return float(np.log(np.sum(w**xi)) / (1 - xi) / np.log(base))


def reflected_density(rho, da, db):
    """rho_{AA*} for rho on A (da) x B (db), psi[a, b, a*, b*] = sqrt(rho)[ab, a*b*]."""
    psi = sqrtm_psd(rho).reshape(da, db, da, db)
    out = np.einsum("ibjc,kbmc->ijkm", psi, psi.conj())
    return out.reshape(da * da, da * da)


def reflected_entropy(rho, da, db, base=2.0):
    return entropy(reflected_density(rho, da, db), base)


def mutual_information(rho, da, db):
    return entropy(ptrace(rho, (da, db), [0])) + entropy(ptrace(rho, (da, db), [1])) - entropy(rho)

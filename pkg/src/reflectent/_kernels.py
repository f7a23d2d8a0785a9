"""Hot loops: cyclic complex Jacobi diagonalization.

Two interchangeable implementations exist. ``jacobi_loops`` is written in the
scalar-loop style numba compiles well; ``jacobi_numpy`` updates whole rows and
columns with numpy slicing and is used when numba is missing or disabled
(``REFLECTENT_NO_NUMBA=1``). Both return ``(diag, vecs, sweeps, off)``.
"""

import math

import numpy as np

from reflectent import config

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False


def _off_norm_loops(a):
    n = a.shape[0]
    acc = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                acc += a[i, j].real ** 2 + a[i, j].imag ** 2
    return math.sqrt(acc)


def _rotation(app, aqq, mag):
    # tan of the angle that annihilates a real off-diagonal element
    theta = (aqq - app) / (2.0 * mag)
    if abs(theta) > 1e150:
        t = 0.5 / theta
    else:
        t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
        if theta < 0.0:
            t = -t
    c = 1.0 / math.sqrt(t * t + 1.0)
    return t, c, t * c


def jacobi_loops(h, threshold, max_sweeps):
    a = h.copy()
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    off = _off_norm_loops(a)
    # elements this small cannot move off(H) above the threshold
    negligible = 1e-3 * threshold / n
    sweeps = 0
    while off > threshold and sweeps < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                mag = abs(g)
                if mag <= negligible:
                    continue
                ph = complex(g.real / mag, g.imag / mag)
                phc = ph.conjugate()
                app = a[p, p].real
                aqq = a[q, q].real
                t, c, s = _rotation(app, aqq, mag)
                for k in range(n):
                    x = a[k, p]
                    y = a[k, q]
                    a[k, p] = c * x - s * phc * y
                    a[k, q] = s * x + c * phc * y
                for k in range(n):
                    x = a[p, k]
                    y = a[q, k]
                    a[p, k] = c * x - s * ph * y
                    a[q, k] = s * x + c * ph * y
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
                for k in range(n):
                    x = v[k, p]
                    y = v[k, q]
                    v[k, p] = c * x - s * phc * y
                    v[k, q] = s * x + c * phc * y
        sweeps += 1
        off = _off_norm_loops(a)
    d = np.empty(n)
    for i in range(n):
        d[i] = a[i, i].real
    return d, v, sweeps, off


def _off_norm_numpy(a):
    off = a[~np.eye(a.shape[0], dtype=bool)]
    return float(np.sqrt(np.sum(off.real**2 + off.imag**2)))


def jacobi_numpy(h, threshold, max_sweeps):
    a = np.array(h, dtype=np.complex128, copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    off = _off_norm_numpy(a)
    negligible = 1e-3 * threshold / n
    sweeps = 0
    while off > threshold and sweeps < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                mag = abs(g)
                if mag <= negligible:
                    continue
                ph = complex(g.real / mag, g.imag / mag)
                phc = ph.conjugate()
                app = a[p, p].real
                aqq = a[q, q].real
                t, c, s = _rotation(app, aqq, mag)
                x, y = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * x - s * phc * y
                a[:, q] = s * x + c * phc * y
                x, y = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * x - s * ph * y
                a[q, :] = s * x + c * ph * y
                a[p, q] = a[q, p] = 0.0
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
                x, y = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * x - s * phc * y
                v[:, q] = s * x + c * phc * y
        sweeps += 1
        off = _off_norm_numpy(a)
    return np.diag(a).real.copy(), v, sweeps, off


if HAVE_NUMBA:
    _off_norm_loops = njit(cache=True)(_off_norm_loops)
    _rotation = njit(cache=True)(_rotation)
    jacobi_numba = njit(cache=True)(jacobi_loops)
else:  # pragma: no cover
    jacobi_numba = None


def jacobi(h, threshold, max_sweeps, backend=None):
    """Dispatch to the numba or numpy kernel.

    ``backend`` is ``"numba"``, ``"numpy"`` or ``None`` (follow
    ``config.USE_NUMBA``).
    """
    if backend is None:
        backend = "numba" if (config.USE_NUMBA and HAVE_NUMBA) else "numpy"
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is not importable")
        return jacobi_numba(np.ascontiguousarray(h, dtype=np.complex128), float(threshold), int(max_sweeps))
    if backend == "numpy":
        return jacobi_numpy(h, threshold, max_sweeps)
    raise ValueError(f"unknown backend {backend!r}")

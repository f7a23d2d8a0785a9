"""Hand-derived reduced density matrices of the accelerated states.

These are written out term by term as ket-bra sums, independently of the
partial-trace machinery, and serve as reference values for it. Basis order
follows the register: for ``ABbar`` the first bit is A, the second Bbar.
"""

from __future__ import annotations

import math

import numpy as np

from reflectent.errors import ArgumentError


def _ketbra(nbits: int, terms: dict[tuple[str, str], float]) -> np.ndarray:
    m = np.zeros((2**nbits, 2**nbits))
    for (ket, bra), c in terms.items():
        m[int(ket, 2), int(bra, 2)] += c
    return m


def bell(alpha: float, r: float) -> dict[str, np.ndarray]:
    a2 = alpha * alpha
    b = math.sqrt(max(1 - a2, 0.0))
    c, s = math.cos(r), math.sin(r)
    return {
        "AB": _ketbra(2, {
            ("00", "00"): a2 * c * c,
            ("00", "11"): alpha * b * c,
            ("11", "00"): alpha * b * c,
            ("01", "01"): a2 * s * s,
            ("11", "11"): 1 - a2,
        }),
        "ABbar": _ketbra(2, {
            ("00", "00"): a2 * c * c,
            ("01", "01"): a2 * s * s,
            ("01", "10"): alpha * b * s,
            ("10", "01"): alpha * b * s,
            ("10", "10"): 1 - a2,
        }),
        "BBbar": _ketbra(2, {
            ("00", "00"): a2 * c * c,
            ("00", "11"): a2 * c * s,
            ("11", "00"): a2 * c * s,
            ("10", "10"): 1 - a2,
            ("11", "11"): a2 * s * s,
        }),
        "A": np.diag([a2, 1 - a2]),
        "B": np.diag([a2 * c * c, 1 - a2 * c * c]),
        "Bbar": np.diag([1 - a2 * s * s, a2 * s * s]),
    }


def werner(alpha: float, r: float) -> dict[str, np.ndarray]:
    a2 = alpha * alpha
    w = math.sqrt(max(1 - 2 * a2, 0.0))
    c, s = math.cos(r), math.sin(r)
    return {
        "AB": _ketbra(2, {
            ("00", "00"): a2 * c * c,
            ("01", "01"): (1 - 2 * a2) + a2 * s * s,
            ("10", "01"): alpha * w * c,
            ("01", "10"): alpha * w * c,
            ("10", "10"): a2 * c * c,
            ("11", "11"): a2 * s * s,
        }),
        "ABbar": _ketbra(2, {
            ("00", "00"): (1 - 2 * a2) + a2 * c * c,
            ("01", "01"): a2 * s * s,
            ("00", "11"): alpha * w * s,
            ("11", "00"): alpha * w * s,
            ("10", "10"): a2 * c * c,
            ("11", "11"): a2 * s * s,
        }),
        "BBbar": _ketbra(2, {
            ("00", "00"): 2 * a2 * c * c,
            ("00", "11"): 2 * a2 * c * s,
            ("11", "00"): 2 * a2 * c * s,
            ("11", "11"): 2 * a2 * s * s,
            ("10", "10"): 1 - 2 * a2,
        }),
        "A": np.diag([1 - a2, a2]),
        "B": np.diag([2 * a2 * c * c, 1 - 2 * a2 * c * c]),
        "Bbar": np.diag([1 - 2 * a2 * s * s, 2 * a2 * s * s]),
    }


def ghz(alpha: float, r: float) -> dict[str, np.ndarray]:
    a2 = alpha * alpha
    c, s = math.cos(r), math.sin(r)
    return {
        "AB": _ketbra(2, {("00", "00"): a2 * c * c, ("01", "01"): a2 * s * s, ("11", "11"): 1 - a2}),
        "ABbar": _ketbra(2, {("00", "00"): a2 * c * c, ("01", "01"): a2 * s * s, ("10", "10"): 1 - a2}),
        "BBbar": _ketbra(2, {
            ("00", "00"): a2 * c * c,
            ("00", "11"): a2 * c * s,
            ("11", "00"): a2 * c * s,
            ("10", "10"): 1 - a2,
            ("11", "11"): a2 * s * s,
        }),
        "A": np.diag([a2, 1 - a2]),
        "B": np.diag([a2 * c * c, 1 - a2 * c * c]),
        "Bbar": np.diag([1 - a2 * s * s, a2 * s * s]),
    }


_TABLES = {"bell": bell, "werner": werner, "ghz": ghz}


def reduced(kind: str, alpha: float, r: float) -> dict[str, np.ndarray]:
    """All two- and one-party matrices for a family, keyed by selector name."""
    try:
        return _TABLES[kind](alpha, r)
    except KeyError:
        raise ArgumentError(f"no closed forms for family {kind!r}") from None


def bell_reflected(alpha: float, r: float) -> dict[str, np.ndarray]:
    """``rho_{XX*}`` for the Bell pairs AB, ABbar and BBbar (basis |x x*>).

    Every Bell pair state is a rank-one coherent block plus one diagonal
    entry, so its square root is written down directly instead of taken
    numerically.
    """
    a2 = alpha * alpha
    b2 = 1 - a2
    c2, s2 = math.cos(r) ** 2, math.sin(r) ** 2
    out = {}

    # AB: block {00, 11} = [[a2 c2, alpha b c], [., b2]] is rank one; plus a2 s2 on |01>.
    # sqrt of a rank-one block p|v><v| is sqrt(p)|v><v|, |v> ∝ (alpha c, b).
    n_ab = a2 * c2 + b2
    v = np.array([alpha * math.cos(r), math.sqrt(b2)]) / math.sqrt(n_ab)
    root = np.zeros((4, 4))
    root[np.ix_([0, 3], [0, 3])] = math.sqrt(n_ab) * np.outer(v, v)
    root[1, 1] = math.sqrt(a2 * s2)
    out["AB"] = _reduce_left(root)

    # ABbar: block {01, 10} = [[a2 s2, alpha b s], [., b2]] rank one; plus a2 c2 on |00>.
    n_abb = a2 * s2 + b2
    w = np.array([alpha * math.sin(r), math.sqrt(b2)]) / math.sqrt(n_abb)
    root = np.zeros((4, 4))
    root[np.ix_([1, 2], [1, 2])] = math.sqrt(n_abb) * np.outer(w, w)
    root[0, 0] = math.sqrt(a2 * c2)
    out["ABbar"] = _reduce_left(root)

    # BBbar: alpha^2 |u><u| with |u> = c|00> + s|11>, plus b2 |10><10|.
    u = np.array([math.cos(r), 0.0, 0.0, math.sin(r)])
    root = alpha * np.outer(u, u)
    root[2, 2] = math.sqrt(b2)
    out["BBbar"] = _reduce_left(root)
    return out


def _reduce_left(root: np.ndarray) -> np.ndarray:
    # psi[x, y, x*, y*] = root[xy, x*y*]; rho[(x x*), (x' x*')] sums over y, y*
    t = root.reshape(2, 2, 2, 2)
    return np.einsum("aybz,cydz->abcd", t, t.conj()).reshape(4, 4)


def bell_reflected_printed(alpha: float, r: float) -> dict[str, np.ndarray]:
    """The three ``rho_{AA*}`` matrices transcribed entry by entry from their
    reference closed forms (removable 0/0 at ``r = 0`` resolved by its limit)."""
    a2 = alpha * alpha
    c2r = math.cos(2 * r)
    sr, cr = math.sin(r), math.cos(r)

    x = -a2 + a2 * c2r + 2
    off = -math.sqrt(2.0) * alpha * (a2 - 1) * abs(sr) / math.sqrt(x)
    ab = np.array([
        [a2 * ((2 * a2 - 1) * c2r + 1) / x, 0, 0, off],
        [0, -2 * a2 * (a2 - 1) * cr**2 / x, 0, 0],
        [0, 0, -2 * a2 * (a2 - 1) * cr**2 / x, 0],
        [off, 0, 0, 2 * (a2 - 1) ** 2 / x],
    ])

    y = a2 + a2 * c2r - 2
    off = -alpha * (a2 - 1) * cr / math.sqrt(1 - a2 * cr**2)
    abbar = np.array([
        [a2 * ((2 * a2 - 1) * c2r - 1) / y, 0, 0, off],
        [0, 2 * a2 * (a2 - 1) * sr**2 / y, 0, 0],
        [0, 0, 2 * a2 * (a2 - 1) * sr**2 / y, 0],
        [off, 0, 0, -2 * (a2 - 1) ** 2 / y],
    ])

    bbbar = np.array([
        [a2 * cr**4, 0, 0, alpha * math.sqrt(1 - a2) * cr**2],
        [0, a2 * sr**2 * cr**2, 0, 0],
        [0, 0, a2 * sr**2 * cr**2, 0],
        [alpha * math.sqrt(1 - a2) * cr**2, 0, 0, -a2 + a2 * sr**2 * cr**2 + 1],
    ])
    return {"AB": ab, "ABbar": abbar, "BBbar": bbbar}

"""
Hot inner loops for modular series arithmetic.

Two interchangeable backends live here: numba-compiled loops and a pure
numpy path.  ``QCORE_NUMBA=0`` in the environment (or a missing numba)
selects numpy.  Both return bit-identical int64 arrays holding least
nonnegative residues.
"""

import os

import numpy as np

INT64_LIMIT = 2**63 - 1


def _numba_requested():
    flag = os.environ.get("QCORE_NUMBA", "1").strip().lower()
    return flag not in ("0", "false", "no", "off")


try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and _numba_requested()


def fits_int64(modulus, length):
    """True when a length-``length`` dot product of residues cannot overflow int64."""
    return (modulus - 1) ** 2 * max(length, 1) <= INT64_LIMIT


# ---------------------------------------------------------------------------
# numpy backend


def mul_mod_numpy(a, b, m, order):
    a = a[:order]
    b = b[:order]
    if len(a) == 0 or len(b) == 0:
        return np.zeros(order, dtype=np.int64)
    full = np.convolve(a, b)[:order] % m
    out = np.zeros(order, dtype=np.int64)
    out[: len(full)] = full
    return out


def inv_mod_numpy(a, m, order, inv0):
    c = np.zeros(order, dtype=np.int64)
    c[0] = inv0 % m
    n_a = len(a)
    for n in range(1, order):
        hi = min(n, n_a - 1)
        if hi < 1:
            continue
        # sum_{j=1}^{hi} a_j c_{n-j}
        s = int(np.dot(a[1 : hi + 1], c[n - hi : n][::-1]))
        c[n] = (-inv0 * (s % m)) % m
    return c


# ---------------------------------------------------------------------------
# numba backend

if HAS_NUMBA:

    @numba.njit(cache=True, nogil=True)
    def mul_mod_numba(a, b, m, order):
        out = np.zeros(order, dtype=np.int64)
        na = min(len(a), order)
        nb = min(len(b), order)
        for i in range(na):
            ai = a[i]
            if ai == 0:
                continue
            lim = min(nb, order - i)
            for j in range(lim):
                out[i + j] += ai * b[j]
        for n in range(order):
            out[n] %= m
        return out

    @numba.njit(cache=True, nogil=True)
    def inv_mod_numba(a, m, order, inv0):
        c = np.zeros(order, dtype=np.int64)
        c[0] = inv0 % m
        n_a = len(a)
        for n in range(1, order):
            s = 0
            hi = min(n, n_a - 1)
            for j in range(1, hi + 1):
                s += a[j] * c[n - j]
            c[n] = (-inv0 * (s % m)) % m
        return c

else:  # pragma: no cover
    mul_mod_numba = None
    inv_mod_numba = None


def mul_mod(a, b, m, order):
    """Truncated product of two residue arrays modulo ``m`` (caller checks ``fits_int64``)."""
    if USE_NUMBA:
        return mul_mod_numba(a, b, m, order)
    return mul_mod_numpy(a, b, m, order)


def inv_mod(a, m, order, inv0):
    """Triangular-solve inverse of a residue array; ``inv0`` is the inverse of ``a[0]``."""
    if USE_NUMBA:
        return inv_mod_numba(a, m, order, inv0)
    return inv_mod_numpy(a, m, order, inv0)


def backend_name():
    return "numba" if USE_NUMBA else "numpy"

"""Alternating Weyl sums, the one hot loop of the package.

For integer label vectors ``n_a`` (already shifted by rho), integer pairing
vectors ``y_b`` and a modulus ``M`` we need

    A[a, b] = sum_w sign(w) exp(2 pi i ((w n_a) . y_b) / M).

Both backends first count, per (a, b), how many signed Weyl terms land on
each residue mod M. The counts are exact integers, so the only floating
step is one dot product with the table of M-th roots of unity, and the two
backends agree bit for bit.

The numba backend is used unless ``NSVERLINDE_DISABLE_NUMBA`` is set or
numba cannot be imported.
"""
from __future__ import annotations

import numpy as np

from ._config import numba_disabled

try:  # pragma: no cover - exercised implicitly when numba is present
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False


# evaluation runs in extended precision: Verlinde numbers reach 10^8 at desk
# scale, and the integrality guard is absolute
REAL = np.longdouble
COMPLEX = np.clongdouble
PI = np.longdouble("3.14159265358979323846264338327950288")


def roots_of_unity(modulus: int) -> np.ndarray:
    k = np.arange(modulus)
    angle = 2 * PI * k.astype(REAL) / REAL(modulus)
    out = np.cos(angle) + 1j * np.sin(angle)
    # exact on the axes
    axis = (4 * k) % modulus == 0
    out[axis] = np.array([1, 1j, -1, -1j], dtype=COMPLEX)[(4 * k[axis]) // modulus]
    return out.astype(COMPLEX)


def unit_phase(numerator: int, denominator: int) -> COMPLEX:
    """exp(2 pi i numerator / denominator) in extended precision."""
    r = numerator % denominator
    return roots_of_unity(denominator)[r]


def _histogram_numpy(mats, signs, nums, ys, modulus):
    n_w = mats.shape[0]
    n_b = ys.shape[0]
    hist = np.zeros((nums.shape[0], n_b, modulus), dtype=np.int64)
    offsets = (np.arange(n_b, dtype=np.int64) * modulus)[None, :]
    plus = signs > 0
    for a in range(nums.shape[0]):
        images = mats @ nums[a]  # (W, l)
        res = (images @ ys.T) % modulus  # (W, n_b)
        idx = res + offsets
        pos = np.bincount(idx[plus].ravel(), minlength=n_b * modulus)
        neg = np.bincount(idx[~plus].ravel(), minlength=n_b * modulus)
        hist[a] = (pos - neg).reshape(n_b, modulus)
    assert n_w == len(signs)
    return hist


if _HAVE_NUMBA:

    @njit(cache=True)
    def _histogram_numba(mats, signs, nums, ys, modulus):  # pragma: no cover - compiled
        n_w, l = mats.shape[0], mats.shape[1]
        n_a, n_b = nums.shape[0], ys.shape[0]
        hist = np.zeros((n_a, n_b, modulus), dtype=np.int64)
        v = np.empty(l, dtype=np.int64)
        for a in range(n_a):
            for w in range(n_w):
                for i in range(l):
                    s = 0
                    for j in range(l):
                        s += mats[w, i, j] * nums[a, j]
                    v[i] = s
                sg = signs[w]
                for b in range(n_b):
                    t = 0
                    for i in range(l):
                        t += v[i] * ys[b, i]
                    r = t % modulus
                    if r < 0:
                        r += modulus
                    hist[a, b, r] += sg
        return hist

else:  # pragma: no cover
    _histogram_numba = None


def active_backend() -> str:
    return "numba" if _HAVE_NUMBA and not numba_disabled() else "numpy"


def residue_histogram(mats, signs, nums, ys, modulus: int, backend: str | None = None) -> np.ndarray:
    """Signed residue counts, shape ``(len(nums), len(ys), modulus)``."""
    backend = backend or active_backend()
    mats = np.ascontiguousarray(mats, dtype=np.int64)
    signs = np.ascontiguousarray(signs, dtype=np.int64)
    nums = np.ascontiguousarray(np.atleast_2d(nums), dtype=np.int64)
    ys = np.ascontiguousarray(np.atleast_2d(ys), dtype=np.int64)
    if modulus < 1:
        raise ValueError("modulus must be positive")
    if backend == "numba":
        if _histogram_numba is None:
            raise RuntimeError("numba backend requested but numba is not available")
        return _histogram_numba(mats, signs, nums, ys, int(modulus))
    if backend == "numpy":
        return _histogram_numpy(mats, signs, nums, ys, int(modulus))
    raise ValueError(f"unknown backend {backend!r}")


def alternating_sums(mats, signs, nums, ys, modulus: int, backend: str | None = None) -> np.ndarray:
    """Complex matrix ``A[a, b]`` described in the module docstring."""
    hist = residue_histogram(mats, signs, nums, ys, modulus, backend)
    return hist.astype(REAL) @ roots_of_unity(int(modulus))

"""Integer convolution kernels behind the group-algebra product.

Coefficient vectors are exact integers over a common denominator, so the
algebra product is an integer convolution over the mixed-radix element
enumeration.  That double loop dominates the runtime of the verification
sweeps, and it runs as a numba-jitted kernel by default.  Setting
PCIKIT_BACKEND=numpy selects a pure-numpy implementation of the same
arithmetic (see benchmarks/bench_kernels.py for a comparison of the two).

Exactness is never traded away: operands whose coefficient bounds do not
fit in int64 take an arbitrary-precision Python path regardless of the
selected backend.
"""

from __future__ import annotations

import os
from functools import cache

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

BACKEND_ENV_VAR = "PCIKIT_BACKEND"
_INT64_MAX = 2**63 - 1

_jitted_convolve = None


def active_backend() -> str:
    """Backend selected by PCIKIT_BACKEND: 'numba' (default) or 'numpy'."""
    choice = os.environ.get(BACKEND_ENV_VAR, "").strip().lower()
    if choice in ("", "auto"):
        return "numba" if numba is not None else "numpy"
    if choice not in ("numba", "numpy"):
        raise ValueError(
            f"{BACKEND_ENV_VAR} must be 'numba' or 'numpy', got {choice!r}"
        )
    if choice == "numba" and numba is None:
        raise RuntimeError(f"{BACKEND_ENV_VAR}=numba but numba is not importable")
    return choice


@cache
def enumeration_tables(orders: tuple[int, ...]):
    """Digit/modulus/stride tables for the element enumeration.

    Index i enumerates exponent vectors lexicographically (first factor most
    significant): digits[i] is the exponent vector, and for any two indices
    the product element sits at ((digits[i] + digits[j]) % mods) @ strides.
    """
    k = len(orders)
    n = 1
    for d in orders:
        n *= d
    mods = np.array(orders, dtype=np.int64)
    strides = np.ones(k, dtype=np.int64)
    for i in range(k - 2, -1, -1):
        strides[i] = strides[i + 1] * orders[i + 1]
    idx = np.arange(n, dtype=np.int64)
    digits = np.empty((n, k), dtype=np.int64)
    for i in range(k):
        digits[:, i] = (idx // strides[i]) % mods[i]
    digits.setflags(write=False)
    mods.setflags(write=False)
    strides.setflags(write=False)
    return digits, mods, strides


def translate_indices(i: int, orders: tuple[int, ...]) -> np.ndarray:
    """Permutation j -> index of (element i) * (element j)."""
    digits, mods, strides = enumeration_tables(orders)
    return ((digits[i] + digits) % mods) @ strides


def _convolve_loop(a, b, digits, mods, strides, out):
    n = a.shape[0]
    k = digits.shape[1]
    for i in range(n):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(n):
            bj = b[j]
            if bj == 0:
                continue
            idx = 0
            for t in range(k):
                d = digits[i, t] + digits[j, t]
                if d >= mods[t]:
                    d -= mods[t]
                idx += d * strides[t]
            out[idx] += ai * bj


def _convolve_numba(a, b, digits, mods, strides):
    global _jitted_convolve
    if _jitted_convolve is None:
        _jitted_convolve = numba.njit(cache=True)(_convolve_loop)
    out = np.zeros(a.shape[0], dtype=np.int64)
    _jitted_convolve(a, b, digits, mods, strides, out)
    return out


def _convolve_numpy(a, b, digits, mods, strides):
    out = np.zeros(a.shape[0], dtype=np.int64)
    if digits.shape[1] == 0:
        out[0] = a[0] * b[0]
        return out
    for i in np.flatnonzero(a):
        perm = ((digits[i] + digits) % mods) @ strides
        out[perm] += a[i] * b
    return out


def _convolve_bigint(a, b, orders):
    # Arbitrary-precision fallback; only reached when int64 bounds fail.
    digits, mods, strides = enumeration_tables(orders)
    dig = [tuple(row) for row in digits.tolist()]
    mod = tuple(mods.tolist())
    stride = tuple(strides.tolist())
    n = len(a)
    out = [0] * n
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        di = dig[i]
        for j, bj in enumerate(b):
            if bj == 0:
                continue
            dj = dig[j]
            idx = 0
            for t in range(len(mod)):
                d = di[t] + dj[t]
                if d >= mod[t]:
                    d -= mod[t]
                idx += d * stride[t]
            out[idx] += ai * bj
    return out


def convolve_ints(a, b, orders: tuple[int, ...], backend: str | None = None):
    """Exact convolution of two integer vectors over the abelian group with
    the given cyclic factor orders.  Returns a list of Python ints."""
    n = 1
    for d in orders:
        n *= d
    if len(a) != n or len(b) != n:
        raise ValueError("coefficient vector length does not match the group order")
    sum_a = sum(abs(v) for v in a)
    sum_b = sum(abs(v) for v in b)
    if sum_a == 0 or sum_b == 0:
        return [0] * n
    max_a = max(abs(v) for v in a)
    max_b = max(abs(v) for v in b)
    # Every accumulated entry is bounded by min(sum|a|*max|b|, sum|b|*max|a|).
    if min(sum_a * max_b, sum_b * max_a) > _INT64_MAX:
        return _convolve_bigint(a, b, orders)
    digits, mods, strides = enumeration_tables(orders)
    av = np.fromiter(a, dtype=np.int64, count=n)
    bv = np.fromiter(b, dtype=np.int64, count=n)
    if backend is None:
        backend = active_backend()
    if backend == "numba":
        out = _convolve_numba(av, bv, digits, mods, strides)
    elif backend == "numpy":
        # Loop over the sparser operand (the product is commutative).
        if np.count_nonzero(bv) < np.count_nonzero(av):
            av, bv = bv, av
        out = _convolve_numpy(av, bv, digits, mods, strides)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return out.tolist()

"""JIT-compiled patience-sorting kernel for long integer sequences.

Kept in its own module so the numba import cost is only paid when the
kernel is actually wanted; callers fall back to pure Python when the
import fails.
"""
import numpy as np
from numba import njit


@njit(cache=True)
def lis_indices_int64(a):  # pragma: no cover - exercised via untangle tests
    n = a.shape[0]
    tails = np.empty(n, dtype=np.int64)
    tails_idx = np.empty(n, dtype=np.int64)
    prev = np.full(n, -1, dtype=np.int64)
    m = 0
    for i in range(n):
        x = a[i]
        lo, hi = 0, m
        while lo < hi:
            mid = (lo + hi) // 2
            if tails[mid] < x:
                lo = mid + 1
            else:
                hi = mid
        tails[lo] = x
        tails_idx[lo] = i
        prev[i] = tails_idx[lo - 1] if lo > 0 else -1
        if lo == m:
            m += 1
    out = np.empty(m, dtype=np.int64)
    j = tails_idx[m - 1]
    for k in range(m - 1, -1, -1):
        out[k] = j
        j = prev[j]
    return out

"""Linear-scan (merge) kernels over strictly ascending vertex lists.

``bound`` is exclusive: only IDs ``< bound`` are emitted, and the scan stops
as soon as the bounded list is exhausted.  The ``*_into`` forms write to a
caller-owned buffer and may run in place (``out`` aliasing ``a``) because the
write cursor never passes the read cursor of ``a``.
"""

from __future__ import annotations

import numba
import numpy as np

NO_BOUND = np.iinfo(np.int64).max


@numba.njit(nogil=True, cache=True)
def intersect_into(a, na, b, nb, bound, out):
    i = 0
    j = 0
    k = 0
    while i < na and j < nb:
        x = a[i]
        y = b[j]
        if x >= bound or y >= bound:
            break
        if x < y:
            i += 1
        elif y < x:
            j += 1
        else:
            out[k] = x
            k += 1
            i += 1
            j += 1
    return k


@numba.njit(nogil=True, cache=True)
def difference_into(a, na, b, nb, bound, out):
    i = 0
    j = 0
    k = 0
    while i < na:
        x = a[i]
        if x >= bound:
            break
        while j < nb and b[j] < x:
            j += 1
        if j >= nb or b[j] != x:
            out[k] = x
            k += 1
        i += 1
    return k


@numba.njit(nogil=True, cache=True)
def bounded_copy_into(a, na, bound, out):
    k = 0
    while k < na and a[k] < bound:
        out[k] = a[k]
        k += 1
    return k


def _as_list(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.int64)


def _bound(bound: int | None) -> int:
    return NO_BOUND if bound is None else int(bound)


def intersect(a, b, bound: int | None = None) -> np.ndarray:
    a, b = _as_list(a), _as_list(b)
    out = np.empty(min(len(a), len(b)), dtype=np.int64)
    k = intersect_into(a, len(a), b, len(b), _bound(bound), out)
    return out[:k]


def difference(a, b, bound: int | None = None) -> np.ndarray:
    a, b = _as_list(a), _as_list(b)
    out = np.empty(len(a), dtype=np.int64)
    k = difference_into(a, len(a), b, len(b), _bound(bound), out)
    return out[:k]

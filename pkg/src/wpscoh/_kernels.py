"""Hot numeric kernels with a numba path and a pure-numpy fallback.

The only inner loop in the package that is both exponential and fits in
machine integers is the subset enumeration behind Kawasaki's invariants:
for a weight vector of length n+1 every one of the 2^(n+1) - 1 non-empty
index subsets J contributes h_J = prod(chi_J) / gcd(chi_J) to an lcm.

Set ``WPSCOH_NUMBA=1`` to run the jitted kernel; the default is the numpy
path, which avoids paying numba's compile time in short CLI runs.  Inputs
whose coordinate product could overflow int64 are routed to an exact
Python-int implementation regardless of the flag.
"""
from __future__ import annotations

import math
import os
from functools import reduce
from itertools import combinations

import numpy as np

INT64_SAFE = 2**62

_numba_kernel = None


def numba_requested() -> bool:
    return os.environ.get("WPSCOH_NUMBA", "0").strip().lower() in ("1", "true", "yes", "on")


def _gcd64(a, b):
    while b:
        a, b = b, a % b
    return a


def _get_numba_kernel():
    global _numba_kernel
    if _numba_kernel is None:
        import numba

        gcd = numba.njit(cache=False)(_gcd64)

        @numba.njit(cache=False)
        def kernel(coords):
            m = coords.shape[0]
            out = np.ones(m + 1, dtype=np.int64)
            for mask in range(1, 1 << m):
                prod = 1
                g = 0
                size = 0
                for i in range(m):
                    if (mask >> i) & 1:
                        c = coords[i]
                        prod *= c
                        g = gcd(g, c)
                        size += 1
                h = prod // g
                cur = out[size]
                out[size] = cur // gcd(cur, h) * h
            return out

        _numba_kernel = kernel
    return _numba_kernel


def subset_lcms_numba(coords: np.ndarray) -> np.ndarray:
    return _get_numba_kernel()(np.ascontiguousarray(coords, dtype=np.int64))


def subset_lcms_numpy(coords: np.ndarray) -> np.ndarray:
    coords = np.asarray(coords, dtype=np.int64)
    m = coords.shape[0]
    masks = np.arange(1, 1 << m, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(m, dtype=np.int64)) & 1).astype(bool)
    prods = np.where(bits, coords, 1).prod(axis=1)
    gcds = np.gcd.reduce(np.where(bits, coords, 0), axis=1)
    h = prods // gcds
    sizes = bits.sum(axis=1)
    out = np.ones(m + 1, dtype=np.int64)
    for k in range(1, m + 1):
        out[k] = np.lcm.reduce(h[sizes == k])
    return out


def subset_lcms_python(coords) -> list[int]:
    """Exact reference: out[k] = lcm of h_J over all k-element subsets J."""
    coords = [int(c) for c in coords]
    out = [1] * (len(coords) + 1)
    for k in range(1, len(coords) + 1):
        acc = 1
        for sub in combinations(coords, k):
            h = math.prod(sub) // reduce(math.gcd, sub)
            acc = math.lcm(acc, h)
        out[k] = acc
    return out


def subset_lcms(coords) -> list[int]:
    """Dispatch to the fastest exact path for these coordinates."""
    coords = [int(c) for c in coords]
    if math.prod(coords) >= INT64_SAFE:
        return subset_lcms_python(coords)
    arr = np.asarray(coords, dtype=np.int64)
    if numba_requested():
        res = subset_lcms_numba(arr)
    else:
        res = subset_lcms_numpy(arr)
    return [int(v) for v in res]

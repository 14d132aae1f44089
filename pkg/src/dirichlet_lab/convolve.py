"""Dirichlet convolution (f*g)(n) = sum over d | n of f(d) g(n/d)."""

from __future__ import annotations

import numpy as np
from numba import njit

from .errors import InvalidArgument, TableOverflowError
from .funcs import INT64_MAX, INT64_MIN, IntFunctionTable, RealFunctionTable, Table


@njit(cache=True)
def _mul_overflows(a, b):
    if a == 0 or b == 0:
        return False
    if a == INT64_MIN or b == INT64_MIN:
        return not (a == 1 or b == 1)
    return abs(a) > INT64_MAX // abs(b)


@njit(cache=True)
def _convolve_int_kernel(f, g, out):
    N = len(f) - 1
    for d in range(1, N + 1):
        fd = f[d]
        if fd == 0:
            continue
        for m in range(1, N // d + 1):
            gm = g[m]
            if gm == 0:
                continue
            if _mul_overflows(fd, gm):
                return d * m
            p = fd * gm
            acc = out[d * m]
            if (p > 0 and acc > INT64_MAX - p) or (p < 0 and acc < INT64_MIN - p):
                return d * m
            out[d * m] = acc + p
    return -1


@njit(cache=True)
def _convolve_real_kernel(f, g, out):
    # ascending d, so each out[n] is accumulated in a fixed order
    N = len(f) - 1
    for d in range(1, N + 1):
        fd = f[d]
        if fd == 0.0:
            continue
        for m in range(1, N // d + 1):
            out[d * m] += fd * g[m]


def _label(f, g):
    return f"({f.name})*({g.name})"


def dirichlet_convolve(f: Table, g: Table) -> Table:
    """Convolve two tables of the same limit.

    Two integer tables give an exact, overflow-checked integer table; if
    either side is real the result is real.
    """
    if f.limit != g.limit:
        raise InvalidArgument(f"table limits differ: {f.limit} vs {g.limit}")
    N = f.limit
    if isinstance(f, IntFunctionTable) and isinstance(g, IntFunctionTable):
        out = np.zeros(N + 1, dtype=np.int64)
        bad = _convolve_int_kernel(f.data, g.data, out)
        if bad >= 0:
            raise TableOverflowError(
                f"convolution {_label(f, g)} overflows int64 at n={bad}", n=int(bad)
            )
        return IntFunctionTable(_label(f, g), out)
    out = np.zeros(N + 1, dtype=np.float64)
    _convolve_real_kernel(
        f.data.astype(np.float64), g.data.astype(np.float64), out
    )
    return RealFunctionTable(_label(f, g), out)


def convolve_naive(f: Table, g: Table, n: int):
    """(f*g)(n) by enumerating the divisors of n; the oracle for
    dirichlet_convolve. Integer inputs give a Python int (no overflow)."""
    if not 1 <= n <= min(f.limit, g.limit):
        raise InvalidArgument(f"n={n} outside 1..{min(f.limit, g.limit)}")
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += f[d] * g[n // d]
    return total

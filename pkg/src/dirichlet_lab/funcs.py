"""
Exact tables of classical arithmetic functions.

Integer tables hold int64 values f(1..N) built by sieving; every kernel
checks for overflow and reports the first offending n instead of wrapping.
Real tables hold float64 values and are produced mostly by `scale_by_power`.

Internally a table keeps a padded array ``data`` of length N+1 with
``data[n] == f(n)`` and ``data[0] == 0`` so kernels can index by n directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from numba import njit

from .errors import InvalidArgument, NumericError, TableOverflowError

INT64_MAX = np.iinfo(np.int64).max
INT64_MIN = np.iinfo(np.int64).min
DEFAULT_LIMIT = 10**6


@dataclass(frozen=True, eq=False)
class _Table:
    name: str
    data: np.ndarray

    @property
    def limit(self) -> int:
        return len(self.data) - 1

    @property
    def values(self) -> np.ndarray:
        """Values f(1), ..., f(N) as a read-only view."""
        return self.data[1:]

    def __len__(self):
        return self.limit

    def __getitem__(self, n):
        if isinstance(n, slice):
            raise TypeError("tables are indexed by a single natural number")
        if not 1 <= n <= self.limit:
            raise InvalidArgument(f"index {n} outside 1..{self.limit}")
        return self.data[n].item()

    def equals(self, other: "_Table") -> bool:
        return self.limit == other.limit and bool(np.array_equal(self.data, other.data))


@dataclass(frozen=True, eq=False)
class IntFunctionTable(_Table):
    """Exact int64 values of an arithmetic function on 1..N."""

    def __post_init__(self):
        data = np.asarray(self.data)
        if data.dtype != np.int64:
            raise InvalidArgument(f"integer table needs int64 data, got {data.dtype}")
        _check_padded(data)
        data = data.copy()
        data[0] = 0
        data.flags.writeable = False
        object.__setattr__(self, "data", data)

    @classmethod
    def from_values(cls, name: str, values: Sequence[int]) -> "IntFunctionTable":
        """Build a table from f(1..N); Python ints out of int64 range raise."""
        for i, v in enumerate(values, start=1):
            if not INT64_MIN <= int(v) <= INT64_MAX:
                raise TableOverflowError(f"{name}({i}) = {v} does not fit in int64", n=i)
        data = np.zeros(len(values) + 1, dtype=np.int64)
        data[1:] = np.asarray(values, dtype=np.int64)
        return cls(name, data)

    def times(self, c: int) -> "IntFunctionTable":
        """The table c*f, overflow-checked."""
        big = [int(v) * int(c) for v in self.values]
        return IntFunctionTable.from_values(f"{c}*{self.name}", big)


@dataclass(frozen=True, eq=False)
class RealFunctionTable(_Table):
    """float64 values of an arithmetic function on 1..N; all finite."""

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.float64)
        _check_padded(data)
        data = data.copy()
        data[0] = 0.0
        if not np.all(np.isfinite(data)):
            bad = int(np.argmin(np.isfinite(data)))
            raise NumericError(f"{self.name}({bad}) is not finite")
        data.flags.writeable = False
        object.__setattr__(self, "data", data)

    @classmethod
    def from_values(cls, name: str, values: Sequence[float]) -> "RealFunctionTable":
        data = np.zeros(len(values) + 1, dtype=np.float64)
        data[1:] = np.asarray(values, dtype=np.float64)
        return cls(name, data)

    def times(self, c: float) -> "RealFunctionTable":
        return RealFunctionTable(f"{c}*{self.name}", self.data * c)


Table = Union[IntFunctionTable, RealFunctionTable]


def _check_padded(data):
    if data.ndim != 1 or len(data) < 2:
        raise InvalidArgument("a table needs at least one value (limit N >= 1)")


def _check_limit(N):
    if isinstance(N, bool) or not isinstance(N, (int, np.integer)) or N < 1:
        raise InvalidArgument(f"table limit must be a natural number >= 1, got {N!r}")
    return int(N)


# ---------------------------------------------------------------------------
# numba kernels. They return the first offending index (or -1) instead of
# raising, so the Python wrapper can name n in the error.
# ---------------------------------------------------------------------------

@njit(cache=True)
def _checked_pow(base, exp):
    r = np.int64(1)
    for _ in range(exp):
        if r > INT64_MAX // base:
            return np.int64(-1)
        r *= base
    return r


@njit(cache=True)
def _id_pow_kernel(N, s, out):
    for n in range(1, N + 1):
        v = _checked_pow(np.int64(n), s)
        if v < 0:
            return n
        out[n] = v
    return -1


@njit(cache=True)
def _linear_sieve_kernel(N, mu, phi, want_phi):
    spf = np.zeros(N + 1, dtype=np.int32)
    # pi(N) < 1.25506 N / ln N for N > 1
    primes = np.empty(int(1.26 * N / np.log(max(N, 2))) + 16, dtype=np.int64)
    count = 0
    mu[1] = 1
    if want_phi:
        phi[1] = 1
    for i in range(2, N + 1):
        if spf[i] == 0:
            spf[i] = i
            primes[count] = i
            count += 1
            mu[i] = -1
            if want_phi:
                phi[i] = i - 1
        for j in range(count):
            p = primes[j]
            ip = i * p
            if p > spf[i] or ip > N:
                break
            spf[ip] = p
            if p == spf[i]:
                mu[ip] = 0
                if want_phi:
                    phi[ip] = phi[i] * p
            else:
                mu[ip] = -mu[i]
                if want_phi:
                    phi[ip] = phi[i] * (p - 1)


@njit(cache=True)
def _sigma_kernel(N, k, out):
    for d in range(1, N + 1):
        dk = _checked_pow(np.int64(d), k)
        if dk < 0:
            return d
        for m in range(d, N + 1, d):
            if out[m] > INT64_MAX - dk:
                return m
            out[m] += dk
    return -1


def sieve_unit(N: int) -> IntFunctionTable:
    """The constant function 1 on 1..N."""
    N = _check_limit(N)
    data = np.ones(N + 1, dtype=np.int64)
    return IntFunctionTable("1", data)


def sieve_epsilon(N: int) -> IntFunctionTable:
    """Identity element of Dirichlet convolution: 1 at n=1, 0 elsewhere."""
    N = _check_limit(N)
    data = np.zeros(N + 1, dtype=np.int64)
    data[1] = 1
    return IntFunctionTable("epsilon", data)


def sieve_id_pow(s: int, N: int) -> IntFunctionTable:
    """Id_s(n) = n**s exactly; raises TableOverflowError naming the first n
    whose power leaves int64."""
    N = _check_limit(N)
    if isinstance(s, bool) or not isinstance(s, (int, np.integer)) or s < 0:
        raise InvalidArgument(f"exponent must be a non-negative integer, got {s!r}")
    data = np.zeros(N + 1, dtype=np.int64)
    bad = _id_pow_kernel(N, int(s), data)
    if bad >= 0:
        raise TableOverflowError(f"{bad}**{s} does not fit in int64", n=int(bad))
    return IntFunctionTable("1" if s == 0 else ("Id" if s == 1 else f"Id_{s}"), data)


def _linear_sieve(N, want_phi):
    mu = np.zeros(N + 1, dtype=np.int64)
    phi = np.zeros(N + 1 if want_phi else 1, dtype=np.int64)
    _linear_sieve_kernel(N, mu, phi, want_phi)
    return mu, phi


def sieve_mobius(N: int) -> IntFunctionTable:
    N = _check_limit(N)
    mu, _ = _linear_sieve(N, False)
    return IntFunctionTable("mu", mu)


def sieve_phi(N: int) -> IntFunctionTable:
    N = _check_limit(N)
    _, phi = _linear_sieve(N, True)
    return IntFunctionTable("phi", phi)


def sieve_sigma_k(k: int, N: int) -> IntFunctionTable:
    """sigma_k(n) = sum of d**k over divisors d of n, by the divisor sweep
    (O(N log N) additions)."""
    N = _check_limit(N)
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 0:
        raise InvalidArgument(f"k must be a non-negative integer, got {k!r}")
    data = np.zeros(N + 1, dtype=np.int64)
    bad = _sigma_kernel(N, int(k), data)
    if bad >= 0:
        raise TableOverflowError(f"sigma_{k} overflows int64 at n={bad}", n=int(bad))
    return IntFunctionTable(f"sigma_{k}", data)


def scale_by_power(t: Table, s: float) -> RealFunctionTable:
    """The real table n -> t(n) / n**s."""
    s = float(s)
    if not math.isfinite(s):
        raise InvalidArgument("scaling exponent must be finite")
    n = np.arange(len(t.data), dtype=np.float64)
    n[0] = 1.0
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        data = t.data.astype(np.float64) / n**s
    if s == 0:
        label = t.name
    else:
        label = f"{t.name}/Id" if s == 1 else f"{t.name}/Id^{s:g}"
    return RealFunctionTable(label, data)


# ---------------------------------------------------------------------------
# brute-force oracles, deliberately sharing no code with the sieves
# ---------------------------------------------------------------------------

def _oracle_phi(n):
    return int(np.count_nonzero(np.gcd(np.arange(1, n + 1), n) == 1))


def _oracle_mu(n):
    sign, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            sign = -sign
        p += 1
    if m > 1:
        sign = -sign
    return sign


def _oracle_sigma(n, k):
    total, d = 0, 1
    while d * d <= n:
        if n % d == 0:
            total += d**k
            if d * d != n:
                total += (n // d) ** k
        d += 1
    return total


def oracle_value(name: str, n: int, k: int = 1) -> int:
    """phi(n), mu(n) or sigma_k(n) straight from the definitions."""
    if n < 1:
        raise InvalidArgument(f"n must be >= 1, got {n}")
    if name == "phi":
        return _oracle_phi(n)
    if name == "mu":
        return _oracle_mu(n)
    if name == "sigma":
        if k < 0:
            raise InvalidArgument("k must be non-negative")
        return _oracle_sigma(n, k)
    raise InvalidArgument(f"unknown function id {name!r}; expected phi, mu or sigma")


def make_table(name: str, N: int, k: int = 1) -> IntFunctionTable:
    """Look up a sieve by short id: unit, epsilon, id, mu, phi, sigma."""
    if name in ("unit", "one", "1"):
        return sieve_unit(N)
    if name == "epsilon":
        return sieve_epsilon(N)
    if name == "id":
        return sieve_id_pow(k, N)
    if name == "mu":
        return sieve_mobius(N)
    if name == "phi":
        return sieve_phi(N)
    if name == "sigma":
        return sieve_sigma_k(k, N)
    raise InvalidArgument(f"unknown function id {name!r}")


FUNCTION_IDS = ("unit", "epsilon", "id", "mu", "phi", "sigma")

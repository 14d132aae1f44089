"""
Summatory functions, truncated Dirichlet series and the discrete Abel
transform, plus the monotone-sum estimate
    sum_{a<n<=x} g(n) = integral_a^x g + C + O(|g(x)|).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy import integrate

from .errors import InvalidArgument, NumericError, TableOverflowError
from .funcs import IntFunctionTable, Table

_LO_MASK = np.int64(0xFFFFFFFF)
_TWO32 = float(2**32)


@dataclass(frozen=True, eq=False)
class PrefixSums:
    """cumulative[x] = sum_{n<=x} f(n) for x = 0..N (cumulative[0] = 0).

    For integer sources the exact running total is kept as two int64 limbs,
    total = hi * 2**32 + lo with 0 <= lo < 2**32, which is a 96-bit-wide
    accumulator and cannot overflow for any int64 table shorter than 2**31.
    """

    source: str
    cumulative: np.ndarray
    _hi: Optional[np.ndarray] = field(default=None, repr=False)
    _lo: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def limit(self) -> int:
        return len(self.cumulative) - 1

    @property
    def is_exact(self) -> bool:
        return self._hi is not None

    def __call__(self, x) -> float:
        """M(f, x) for real x >= 0 (uses floor(x))."""
        i = math.floor(x)
        if not 0 <= i <= self.limit:
            raise InvalidArgument(f"x={x} outside 0..{self.limit}")
        return float(self.cumulative[i])

    def exact(self, x: int) -> int:
        """Exact integer M(f, x); integer sources only."""
        if not self.is_exact:
            raise InvalidArgument("exact totals exist only for integer tables")
        if not 0 <= x <= self.limit:
            raise InvalidArgument(f"x={x} outside 0..{self.limit}")
        return (int(self._hi[x]) << 32) + int(self._lo[x])


def prefix_sums(t: Table) -> PrefixSums:
    if isinstance(t, IntFunctionTable):
        if t.limit >= 2**31:
            raise TableOverflowError("table too long for the 128-bit accumulator")
        lo = np.cumsum(t.data & _LO_MASK)
        hi = np.cumsum(t.data >> 32)
        hi += lo >> 32
        lo &= _LO_MASK
        cumulative = hi.astype(np.float64) * _TWO32 + lo.astype(np.float64)
        for a in (hi, lo, cumulative):
            a.flags.writeable = False
        return PrefixSums(t.name, cumulative, hi, lo)
    cumulative = np.cumsum(t.data)
    if not np.all(np.isfinite(cumulative)):
        raise NumericError(f"prefix sums of {t.name} are not finite")
    cumulative.flags.writeable = False
    return PrefixSums(t.name, cumulative)


def _check_x(t, x):
    if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
        raise InvalidArgument(f"x must be a natural number, got {x!r}")
    if not 1 <= x <= t.limit:
        raise InvalidArgument(f"x={x} outside 1..{t.limit}")
    return int(x)


def dirichlet_partial_sum(t: Table, s: float, x: int) -> float:
    """sum_{n<=x} t(n) / n**s, accumulated in ascending n."""
    x = _check_x(t, x)
    n = np.arange(1, x + 1, dtype=np.float64)
    terms = t.data[1:x + 1].astype(np.float64) / n ** float(s)
    total = float(np.cumsum(terms)[-1])
    if not math.isfinite(total):
        raise NumericError("partial sum is not finite")
    return total


def power_weight_steps(k: float, upto: int) -> np.ndarray:
    """(n+1)**-k - n**-k for n = 1..upto, without cancellation for large n."""
    n = np.arange(1, upto + 1, dtype=np.float64)
    return n ** -k * np.expm1(-k * np.log1p(1.0 / n))


def abel_partial_sum(t: Table, k: float, x: int, sums: Optional[PrefixSums] = None) -> float:
    """sum_{n<=x} t(n)/n**k rewritten by summation by parts:

        B(x)/x**k - sum_{n<=x-1} ((n+1)**-k - n**-k) B(n),  B = prefix sums of t.

    Pass ``sums`` to reuse prefix sums across calls.
    """
    x = _check_x(t, x)
    k = float(k)
    if not math.isfinite(k):
        raise InvalidArgument("k must be finite")
    B = prefix_sums(t) if sums is None else sums
    if B.limit < x:
        raise InvalidArgument("prefix sums shorter than x")
    head = B.cumulative[x] / float(x) ** k
    if x == 1:
        return float(head)
    correction = float(np.sum(power_weight_steps(k, x - 1) * B.cumulative[1:x]))
    return float(head - correction)


@dataclass(frozen=True)
class EulerMaclaurinEstimate:
    integral: float
    C: float
    error_bound: float

    @property
    def value(self) -> float:
        """Estimate of sum_{a<n<=x} g(n)."""
        return self.integral + self.C


# 16-point Gauss-Legendre on [0, 1]
_GL_T, _GL_W = np.polynomial.legendre.leggauss(16)
_GL_T = (_GL_T + 1) / 2
_GL_W = _GL_W / 2

_TAIL_TOL = 1e-12
_MAX_INTERVALS = 2**22


def _frac_weighted_integrals(g_prime, starts):
    # integral over [n, n+1] of (xi - n) g'(xi), for each n in starts
    xi = starts[:, None] + _GL_T[None, :]
    vals = np.asarray(g_prime(xi), dtype=np.float64)
    vals = np.broadcast_to(vals, xi.shape)
    return (vals * _GL_T[None, :]) @ _GL_W


def _integral(g, a, x):
    if x == a:
        return 0.0
    if a > 0:
        pts = [a]
        while pts[-1] * 2 < x:
            pts.append(pts[-1] * 2)
        pts.append(x)
    else:
        pts = list(np.linspace(a, x, 9))
    total = 0.0
    for lo, hi in zip(pts[:-1], pts[1:]):
        v, err = integrate.quad(g, lo, hi, limit=200, epsabs=1e-14, epsrel=1e-13)
        if not math.isfinite(v):
            raise NumericError("quadrature of g did not converge")
        total += v
    return total


def euler_maclaurin_estimate(
    g: Callable,
    g_prime: Callable,
    a: float,
    x: float,
    antiderivative: Optional[Callable] = None,
) -> EulerMaclaurinEstimate:
    """Estimate sum_{a<n<=x} g(n) for monotone g with g -> 0.

    ``g_prime`` must accept numpy arrays. The constant
    C = integral_a^inf (xi - floor(xi)) g'(xi) dxi is summed unit interval by
    unit interval; the remaining tail from N is approximated by
    -g(N)/2 - g'(N)/12 and N is doubled until that estimate moves by less
    than 1e-12. For non-integer a, C also carries (a - floor(a)) g(a).
    """
    a, x = float(a), float(x)
    if not (math.isfinite(a) and math.isfinite(x)) or x < a:
        raise InvalidArgument("need finite a <= x")
    if antiderivative is not None:
        integral = float(antiderivative(x) - antiderivative(a))
    else:
        integral = _integral(g, a, x)

    base = math.floor(a)
    if a == base:
        first, head = int(a), 0.0
    else:
        # partial first interval, plus the boundary term {a} g(a) that the
        # integer-a form of the formula leaves out
        first = base + 1
        head, _ = integrate.quad(lambda t: (t - base) * float(g_prime(t)), a, first)
        head += (a - base) * float(g(a))

    def corrected(upto, partial):
        return partial - float(g(upto)) / 2 - float(g_prime(np.float64(upto))) / 12

    n_done = first
    partial = head
    span = 16
    previous = None
    while True:
        starts = np.arange(n_done, n_done + span, dtype=np.float64)
        partial += math.fsum(_frac_weighted_integrals(g_prime, starts))
        n_done += span
        estimate = corrected(n_done, partial)
        if not math.isfinite(estimate):
            raise NumericError("non-finite value while summing the constant term")
        if previous is not None and abs(estimate - previous) < _TAIL_TOL:
            break
        previous = estimate
        if n_done - first >= _MAX_INTERVALS:
            raise NumericError(
                f"constant term did not settle within {_MAX_INTERVALS} unit intervals"
            )
        span = n_done - first
    return EulerMaclaurinEstimate(integral, estimate, abs(float(g(x))))


def power_sum_asymptote(s: int, x: float) -> float:
    """Leading term x**(s+1)/(s+1) of sum_{n<=x} n**s."""
    if s < 0 or x < 1:
        raise InvalidArgument("need s >= 0 and x >= 1")
    return x ** (s + 1) / (s + 1)

"""
zeta(s) for real s > 1 and Euler's constant, each with an error bound.

Both use a truncated sum plus the Euler-Maclaurin tail (integral term and
the first correction terms). With the monotone derivatives of n**-s and
1/n, the remainder is bounded by the first omitted term, so a desk-sized
cutoff already gives bounds far below 1e-10.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, InvalidArgument

_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class ConstantValue:
    value: float
    error_bound: float
    method: str  # "closed-form" | "series-with-tail" | "derived"

    def __post_init__(self):
        if not self.error_bound >= 0:
            raise InvalidArgument("error_bound must be non-negative")

    def __truediv__(self, other: "ConstantValue") -> "ConstantValue":
        v = self.value / other.value
        rel = self.error_bound / abs(self.value) + other.error_bound / abs(other.value)
        return ConstantValue(v, abs(v) * rel + _EPS * abs(v), "derived")

    def __mul__(self, other: "ConstantValue") -> "ConstantValue":
        v = self.value * other.value
        err = (abs(self.value) * other.error_bound + abs(other.value) * self.error_bound
               + self.error_bound * other.error_bound)
        return ConstantValue(v, err + _EPS * abs(v), "derived")


_CLOSED_FORMS = {2.0: math.pi**2 / 6, 4.0: math.pi**4 / 90}


def _zeta_remainder(s, M):
    # first omitted Euler-Maclaurin term: |B4/4!| * |f'''(M)| for f = x**-s
    return s * (s + 1) * (s + 2) * M ** (-s - 3) / 720


def _check_tol(tol):
    if not (tol > 0 and math.isfinite(tol)):
        raise InvalidArgument(f"tol must be positive and finite, got {tol}")


@lru_cache(maxsize=256)
def zeta(s: float, tol: float = 1e-12) -> ConstantValue:
    """Riemann zeta at real s > 1.

    Closed forms for s = 2 and s = 4; otherwise
    sum_{n<=M} n**-s + M**(1-s)/(s-1) - M**-s/2 + s*M**(-s-1)/12.
    """
    s = float(s)
    _check_tol(tol)
    if not s > 1:
        raise DomainError(f"zeta(s) needs s > 1, got {s}")
    if s in _CLOSED_FORMS:
        return ConstantValue(_CLOSED_FORMS[s], 0.0, "closed-form")
    M = 1
    while _zeta_remainder(s, M) > tol / 2:
        M *= 2
    head = math.fsum(n ** -s for n in range(1, M + 1))
    tail = M ** (1 - s) / (s - 1) - M ** (-s) / 2 + s * M ** (-s - 1) / 12
    value = head + tail
    # a few roundings in the power evaluations on top of the truncation
    bound = _zeta_remainder(s, M) + 8 * _EPS * value
    return ConstantValue(value, bound, "series-with-tail")


def _gamma_remainder(M):
    return 1.0 / (252 * M**6)


@lru_cache(maxsize=64)
def euler_gamma(tol: float = 1e-12) -> ConstantValue:
    """Euler's constant from H_M - ln M - 1/(2M) + 1/(12M^2) - 1/(120M^4)."""
    _check_tol(tol)
    M = 1
    while _gamma_remainder(M) > tol / 2:
        M *= 2
    harmonic = math.fsum(1.0 / n for n in range(1, M + 1))
    value = (harmonic - math.log(M) - 1 / (2 * M) + 1 / (12 * M**2)
             - 1 / (120 * M**4))
    bound = _gamma_remainder(M) + 8 * _EPS * max(harmonic, 1.0)
    return ConstantValue(value, bound, "series-with-tail")


def zeta2_over_zeta4() -> ConstantValue:
    """sum |mu(n)|/n^2 = zeta(2)/zeta(4) = 15/pi^2."""
    return zeta(2) / zeta(4)


def zeta2_times_zeta3(tol: float = 1e-12) -> ConstantValue:
    """sum sigma(n)/n^3 = zeta(2) zeta(3)."""
    return zeta(2) * zeta(3, tol)

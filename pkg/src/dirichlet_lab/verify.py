"""
Predicted leading terms for summatory functions and their empirical check.

A law is one of three kinds:

* ``power``    M(x) ~ C x**alpha
* ``log``      M(x) ~ A ln x (+ B)
* ``little_o`` M(x) = o(x**alpha)

An o(.) statement says nothing at any finite x, so `evaluate_law` turns it
into finite-x verdicts: final relative deviation plus a trend requirement
for power laws, a difference quotient in ln x for log laws (which cancels
the unknown constant B), and a decay ratio between the first and last
checkpoint for little-o laws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .errors import InvalidArgument, NumericError, PreconditionViolated
from .funcs import Table
from .sums import PrefixSums, abel_partial_sum, prefix_sums

POWER, LOG, LITTLE_O = "power", "log", "little_o"

DEFAULT_TOL = {POWER: 1e-3, LOG: 1e-2}
DEFAULT_DECAY_THRESHOLD = 0.1
DEFAULT_TREND_SLACK = 1.5
CONVERGENCE_TAIL = 1e-6
DIVERGENCE_TAIL = 0.1

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass(frozen=True)
class AsymptoticLaw:
    kind: str
    alpha: Optional[float] = None
    coefficient: Optional[float] = None
    intercept_estimate: Optional[float] = None
    description: str = ""
    anchor: str = ""
    series_tail: Optional[float] = None  # last-decade share of the defining series

    def __post_init__(self):
        if self.kind not in (POWER, LOG, LITTLE_O):
            raise InvalidArgument(f"unknown law kind {self.kind!r}")
        if self.kind in (POWER, LITTLE_O):
            if self.alpha is None or not self.alpha > 0:
                raise InvalidArgument("power and little-o laws need alpha > 0")
        if self.kind == POWER:
            c = self.coefficient
            if c is None or not math.isfinite(c) or c == 0:
                raise InvalidArgument("power law coefficient must be finite and non-zero")
        if self.kind == LOG and (self.coefficient is None or not math.isfinite(self.coefficient)):
            raise InvalidArgument("log law coefficient must be finite")

    @classmethod
    def power(cls, alpha, coefficient, description="", anchor="", series_tail=None):
        return cls(POWER, float(alpha), float(coefficient), None, description, anchor, series_tail)

    @classmethod
    def log(cls, coefficient, intercept=None, description="", anchor="", series_tail=None):
        return cls(LOG, None, float(coefficient), intercept, description, anchor, series_tail)

    @classmethod
    def little_o(cls, alpha, description="", anchor=""):
        return cls(LITTLE_O, float(alpha), None, None, description, anchor)

    def scaled(self, c: float) -> "AsymptoticLaw":
        """The same law for the table c*f."""
        if self.kind == LITTLE_O:
            return self
        return replace(self, coefficient=self.coefficient * c)

    def predict(self, x: float) -> float:
        if self.kind == POWER:
            return self.coefficient * x**self.alpha
        if self.kind == LOG:
            return self.coefficient * math.log(x) + (self.intercept_estimate or 0.0)
        return 0.0


@dataclass(frozen=True)
class Checkpoint:
    x: int
    measured: float
    predicted: float
    deviation: float


@dataclass(frozen=True)
class VerificationReport:
    law: AsymptoticLaw
    checkpoints: tuple
    verdict: str
    tolerance_final: Optional[float]
    trend_slack: float
    decay_threshold: float
    estimate: Optional[float] = None  # difference-quotient slope for log laws
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    @property
    def final_deviation(self) -> float:
        return self.checkpoints[-1].deviation


SumsProvider = Union[PrefixSums, Callable[[int], float]]


def _decade_share(terms: np.ndarray) -> tuple:
    """(total, share of the total contributed by n in (N/10, N])."""
    N = len(terms)
    total = float(np.sum(terms))
    last = float(np.sum(terms[N // 10:]))
    share = abs(last) / abs(total) if total != 0 else math.inf
    return total, share


def _weights(N, power):
    n = np.arange(1, N + 1, dtype=np.float64)
    return n**-float(power)


def series_is_convergent(t: Table, s: float, tol: float = CONVERGENCE_TAIL) -> tuple:
    """Decade-tail test on sum |t(n)|/n**s: (share, passed)."""
    terms = np.abs(t.values.astype(np.float64)) * _weights(t.limit, s)
    _, share = _decade_share(terms)
    return share, share < tol


def series_is_divergent(t: Table, s: float, tol: float = DIVERGENCE_TAIL) -> tuple:
    """Decade-tail test on sum t(n)/n**s: (share, passed)."""
    terms = t.values.astype(np.float64) * _weights(t.limit, s)
    _, share = _decade_share(terms)
    return share, share > tol


def wintner_law(g: Table, s: int, tail_tol: float = CONVERGENCE_TAIL,
                description: str = "", anchor: str = "") -> AsymptoticLaw:
    """Leading term of M(f, x) for f = Id_s * g.

    C = (1/(s+1)) * sum_{n<=N} g(n)/n**(s+1), valid when the absolute series
    is numerically convergent. s = 0 is the linear (mean value) case.
    """
    if s < 0:
        raise InvalidArgument("s must be a non-negative integer")
    share, ok = series_is_convergent(g, s + 1, tail_tol)
    if not ok:
        raise PreconditionViolated(
            f"sum |{g.name}(n)|/n^{s + 1} is not numerically convergent: the last "
            f"decade carries {share:.3g} of the total (limit {tail_tol:g})",
            hypothesis="absolute convergence",
        )
    total = float(np.sum(g.values.astype(np.float64) * _weights(g.limit, s + 1)))
    if total == 0:
        raise PreconditionViolated("the series sums to zero; no power-law leading term",
                                   hypothesis="non-zero coefficient")
    return AsymptoticLaw.power(
        s + 1, total / (s + 1),
        description=description or f"M(Id_{s}*{g.name}, x) ~ C x^{s + 1}",
        anchor=anchor, series_tail=share,
    )


def log_mean_law(g: Table, A: float, tail_tol: float = CONVERGENCE_TAIL,
                 description: str = "", anchor: str = "") -> AsymptoticLaw:
    """Leading term A ln x * sum g(n) for f = (A/Id) * g."""
    share, ok = series_is_convergent(g, 0, tail_tol)
    if not ok:
        raise PreconditionViolated(
            f"sum |{g.name}(n)| is not numerically convergent: the last decade "
            f"carries {share:.3g} of the total (limit {tail_tol:g})",
            hypothesis="absolute convergence",
        )
    total = float(np.sum(g.values.astype(np.float64)))
    return AsymptoticLaw.log(
        A * total,
        description=description or f"M(({A:g}/Id)*{g.name}, x) ~ A ln x",
        anchor=anchor, series_tail=share,
    )


def _measure(sums, x):
    v = float(sums(x))
    if not math.isfinite(v):
        raise NumericError(f"measured value at x={x} is not finite")
    return v


def _check_checkpoints(checkpoints, sums):
    xs = [int(x) for x in checkpoints]
    if len(xs) < 3:
        raise InvalidArgument("at least 3 checkpoints are needed")
    if any(b <= a for a, b in zip(xs, xs[1:])) or xs[0] < 1:
        raise InvalidArgument("checkpoints must be natural numbers in strictly increasing order")
    limit = getattr(sums, "limit", None)
    if limit is not None and xs[-1] > limit:
        raise InvalidArgument(f"checkpoint {xs[-1]} exceeds the table limit {limit}")
    return xs


def evaluate_law(
    law: AsymptoticLaw,
    sums: SumsProvider,
    checkpoints: Sequence[int],
    tol_final: Optional[float] = None,
    trend_slack: float = DEFAULT_TREND_SLACK,
    decay_threshold: float = DEFAULT_DECAY_THRESHOLD,
) -> VerificationReport:
    """Compare measured sums with the law at each checkpoint and give a verdict.

    power:    deviation |measured/(C x^alpha) - 1|. Pass when the last
              deviation is within tol_final and, over the last four
              checkpoints, a deviation exceeds trend_slack times its
              predecessor at most once. Tolerance met with a broken trend is
              inconclusive.
    log:      slope (S(x_j) - S(x_i)) / (ln x_j - ln x_i) over the last pair;
              pass when it is within tol_final relative of A.
    little_o: r = |measured| / x^alpha; pass when r_last/r_first <= decay_threshold.
    """
    xs = _check_checkpoints(checkpoints, sums)
    measured = [_measure(sums, x) for x in xs]
    if tol_final is None and law.kind in DEFAULT_TOL:
        tol_final = DEFAULT_TOL[law.kind]

    if law.kind == POWER:
        predicted = [law.predict(x) for x in xs]
        devs = [abs(m / p - 1.0) for m, p in zip(measured, predicted)]
        tail = range(max(1, len(devs) - 3), len(devs))
        breaks = sum(1 for i in tail if devs[i] > trend_slack * devs[i - 1])
        if devs[-1] > tol_final:
            verdict = FAIL
        else:
            verdict = PASS if breaks <= 1 else INCONCLUSIVE
        cps = tuple(Checkpoint(x, m, p, d) for x, m, p, d in zip(xs, measured, predicted, devs))
        return VerificationReport(law, cps, verdict, tol_final, trend_slack, decay_threshold,
                                  notes={"trend_breaks": breaks})

    if law.kind == LOG:
        (xi, si), (xj, sj) = (xs[-2], measured[-2]), (xs[-1], measured[-1])
        slope = (sj - si) / (math.log(xj) - math.log(xi))
        intercept = sj - slope * math.log(xj)
        A = law.coefficient
        err = abs(slope / A - 1.0) if A != 0 else abs(slope)
        verdict = PASS if err <= tol_final else FAIL
        fitted = replace(law, intercept_estimate=intercept)
        cps = []
        for x, m in zip(xs, measured):
            p = fitted.predict(x)
            cps.append(Checkpoint(x, m, p, abs(m / p - 1.0) if p != 0 else abs(m)))
        return VerificationReport(fitted, tuple(cps), verdict, tol_final, trend_slack,
                                  decay_threshold, estimate=slope,
                                  notes={"slope_relative_error": err})

    ratios = [abs(m) / float(x) ** law.alpha for x, m in zip(xs, measured)]
    if ratios[0] == 0:
        verdict = PASS if ratios[-1] == 0 else FAIL
        decay = 0.0 if ratios[-1] == 0 else math.inf
    else:
        decay = ratios[-1] / ratios[0]
        verdict = PASS if decay <= decay_threshold else FAIL
    cps = tuple(Checkpoint(x, m, 0.0, r) for x, m, r in zip(xs, measured, ratios))
    return VerificationReport(law, cps, verdict, tol_final, trend_slack, decay_threshold,
                              notes={"decay_ratio": decay})


def kronecker_decay_family(
    f: Table,
    s: float,
    k_max: int,
    checkpoints: Sequence[int],
    shift_k: int = 1,
    decay_threshold: float = DEFAULT_DECAY_THRESHOLD,
    check_divergence: bool = True,
    conv_tol: float = CONVERGENCE_TAIL,
    div_tol: float = DIVERGENCE_TAIL,
) -> list:
    """Little-o reports for sum_{n<=x} f(n)/n^k = o(x^(s-k)), k = 1..k_max,
    followed by one for sum_{n<=x} f(n)/n^(s-shift_k) = o(x^shift_k).

    The hypotheses (sum f(n)/n^s converges, sum f(n)/n^(s-1) diverges) are
    checked on the whole table by decade-tail tests; checkpoints may stop
    well short of the table limit.
    """
    if k_max < 1 or s - k_max <= 0:
        raise PreconditionViolated(f"need s - k_max > 0, got s={s}, k_max={k_max}",
                                   hypothesis="s - k > 0")
    if s - shift_k <= 0 or shift_k < 1:
        raise PreconditionViolated(f"need s - k > 0 for the shifted sum, got k={shift_k}",
                                   hypothesis="s - k > 0")
    share, ok = series_is_convergent(f, s, conv_tol)
    if not ok:
        raise PreconditionViolated(
            f"sum {f.name}(n)/n^{s:g} is not numerically convergent (last decade share {share:.3g})",
            hypothesis="convergence at s",
        )
    if check_divergence:
        share, ok = series_is_divergent(f, s - 1, div_tol)
        if not ok:
            raise PreconditionViolated(
                f"sum {f.name}(n)/n^{s - 1:g} is not numerically divergent "
                f"(last decade share {share:.3g})",
                hypothesis="divergence at s-1",
            )
    B = prefix_sums(f)
    reports = []

    def run(weight, alpha, description):
        law = AsymptoticLaw.little_o(alpha, description=description)
        provider = _AbelProvider(f, weight, B)
        reports.append(evaluate_law(law, provider, checkpoints, decay_threshold=decay_threshold))

    for k in range(1, k_max + 1):
        run(k, s - k, f"sum {f.name}(n)/n^{k} = o(x^{s - k:g})")
    run(s - shift_k, shift_k, f"sum {f.name}(n)/n^{s - shift_k:g} = o(x^{shift_k})")
    return reports


@dataclass(frozen=True)
class _AbelProvider:
    table: Table
    weight: float
    sums: PrefixSums

    @property
    def limit(self):
        return self.table.limit

    def __call__(self, x):
        return abel_partial_sum(self.table, self.weight, int(x), sums=self.sums)


def decade_checkpoints(limit: int, start: int = 10**3, ratio: int = 10) -> list:
    """Geometric checkpoints start, start*ratio, ... up to limit; at least three."""
    xs = []
    x = start
    while x <= limit:
        xs.append(x)
        x *= ratio
    if len(xs) < 3:
        xs = [max(1, limit // ratio**2), max(2, limit // ratio), limit]
        if not xs[0] < xs[1] < xs[2]:
            raise InvalidArgument(f"limit {limit} is too small for three checkpoints")
    return xs

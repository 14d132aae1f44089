"""
Ready-made verification runs for the worked examples.

Each preset builds the tables it needs, constructs the law from a
convergent series and evaluates it at checkpoints. Series that define a law
coefficient (or whose convergence is a hypothesis) are built ``series_factor``
times longer than the checkpoint limit: the decade-tail convergence test
at 1e-6 needs roughly 1e7 terms for series decaying like 1/n^2.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, replace
from typing import Optional

from .constants import euler_gamma
from .convolve import dirichlet_convolve
from .errors import InvalidArgument
from .funcs import (
    DEFAULT_LIMIT,
    RealFunctionTable,
    scale_by_power,
    sieve_id_pow,
    sieve_mobius,
    sieve_phi,
    sieve_sigma_k,
    sieve_unit,
)
from .sums import prefix_sums
from .verify import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    AsymptoticLaw,
    VerificationReport,
    decade_checkpoints,
    evaluate_law,
    kronecker_decay_family,
    log_mean_law,
    wintner_law,
)

LIMIT_ENV = "DIRICHLET_LAB_LIMIT"

PRESETS = (
    "phi-wintner",
    "sigma-k-wintner",
    "phi-over-n",
    "logmean-3mu",
    "logmean-sigma",
    "kronecker-sigma-k",
    "harmonic-gamma",
)


def default_limit() -> int:
    raw = os.environ.get(LIMIT_ENV)
    if not raw:
        return DEFAULT_LIMIT
    try:
        value = int(float(raw))
    except ValueError:
        raise InvalidArgument(f"{LIMIT_ENV}={raw!r} is not a number") from None
    if value < 1:
        raise InvalidArgument(f"{LIMIT_ENV} must be >= 1")
    return value


@dataclass(frozen=True)
class VerifyConfig:
    limit: Optional[int] = None
    checkpoints: Optional[tuple] = None
    tol: Optional[float] = None
    decay_threshold: float = 0.1
    trend_slack: float = 1.5
    k: int = 1
    series_factor: int = 10

    def resolved_limit(self) -> int:
        return self.limit if self.limit is not None else default_limit()

    def grid(self, start=10**3, ratio=10) -> list:
        if self.checkpoints is not None:
            return list(self.checkpoints)
        return decade_checkpoints(self.resolved_limit(), start, ratio)

    @property
    def series_limit(self) -> int:
        return self.resolved_limit() * self.series_factor


@dataclass(frozen=True)
class PresetResult:
    preset: str
    reports: tuple
    verdict: str


def _combine(verdicts):
    if all(v == PASS for v in verdicts):
        return PASS
    if any(v == FAIL for v in verdicts):
        return FAIL
    return INCONCLUSIVE


def _evaluate(law, sums, cfg, xs):
    return evaluate_law(law, sums, xs, tol_final=cfg.tol, trend_slack=cfg.trend_slack,
                        decay_threshold=cfg.decay_threshold)


def phi_wintner(cfg: VerifyConfig):
    N = cfg.resolved_limit()
    law = wintner_law(sieve_mobius(cfg.series_limit), 1,
                      description="M(phi, x) ~ x^2/(2 zeta(2)) = 3x^2/pi^2",
                      anchor="phi = Id * mu; M(phi,x) = 3x^2/pi^2 + o(x^2)")
    return [_evaluate(law, prefix_sums(sieve_phi(N)), cfg, cfg.grid())]


def sigma_k_wintner(cfg: VerifyConfig):
    k, N = cfg.k, cfg.resolved_limit()
    law = wintner_law(sieve_unit(cfg.series_limit), k,
                      description=f"M(sigma_{k}, x) ~ zeta({k + 1}) x^{k + 1}/{k + 1}",
                      anchor=f"sigma_k = Id_k * 1; M(sigma_k,x) = zeta(k+1)x^(k+1)/(k+1) + o(x^(k+1)), k={k}")
    return [_evaluate(law, prefix_sums(sieve_sigma_k(k, N)), cfg, cfg.grid())]


def phi_over_n(cfg: VerifyConfig):
    N = cfg.resolved_limit()
    g = scale_by_power(sieve_mobius(cfg.series_limit), 1)
    law = wintner_law(g, 0, description="M(phi/Id, x) ~ x/zeta(2)",
                      anchor="phi/Id = 1 * mu/Id; M(phi/Id,x) = x/zeta(2) + o(x)")
    return [_evaluate(law, prefix_sums(scale_by_power(sieve_phi(N), 1)), cfg, cfg.grid())]


def _log_mean_run(cfg, A, g_series, g_table, description, anchor):
    N = cfg.resolved_limit()
    law = log_mean_law(g_series, A, description=description, anchor=anchor)
    inv = scale_by_power(sieve_unit(N), 1).times(A)
    f = dirichlet_convolve(inv, g_table)
    # ratio 100 so that the last pair spans two decades, ending at the limit
    xs = cfg.grid(start=_two_decade_start(N), ratio=100)
    return [_evaluate(law, prefix_sums(f), cfg, xs)]


def _two_decade_start(N):
    start = N
    while start // 100 >= 100:
        start //= 100
    return start


def logmean_3mu(cfg: VerifyConfig):
    N = cfg.resolved_limit()
    g_series = scale_by_power(sieve_mobius(cfg.series_limit), 2)
    g = RealFunctionTable("mu/Id^2", g_series.data[: N + 1])
    return _log_mean_run(cfg, 3.0, g_series, g, "M((3/Id)*(mu/Id^2), x) ~ (3/zeta(2)) ln x",
                         "sum (3/n * mu(n)/n^2) = 3 ln x/zeta(2) + o(ln x)")


def logmean_sigma(cfg: VerifyConfig):
    N = cfg.resolved_limit()
    g_series = scale_by_power(sieve_sigma_k(1, cfg.series_limit), 3)
    g = RealFunctionTable("sigma/Id^3", g_series.data[: N + 1])
    return _log_mean_run(cfg, 1.0, g_series, g, "M((1/Id)*(sigma/Id^3), x) ~ zeta(2)zeta(3) ln x",
                         "sum (1/n * sigma(n)/n^3) = zeta(2)zeta(3) ln x + o(ln x)")


def kronecker_sigma_k(cfg: VerifyConfig):
    """sigma_k with s = k+2: M(sigma_k, x) = o(x^(k+2)) and the family
    sum sigma_k(n)/n^j = o(x^(k+2-j)) for j = 1..k+1."""
    k = cfg.k
    s = k + 2
    f = sieve_sigma_k(k, cfg.series_limit)
    xs = cfg.grid()
    corollary = AsymptoticLaw.little_o(s, description=f"M(sigma_{k}, x) = o(x^{s})",
                                       anchor="sum sigma(n)/n^s converges => M(sigma,x) = o(x^s)")
    first = _evaluate(corollary, prefix_sums(f), cfg, xs)
    family = kronecker_decay_family(f, s, k + 1, xs, shift_k=1,
                                    decay_threshold=cfg.decay_threshold)
    return [first, *family]


def harmonic_gamma(cfg: VerifyConfig):
    """Harmonic sums: log law with slope 1; the intercept is compared with
    Euler's constant and the residual at the last checkpoint must stay within
    |g(x)| = 1/x."""
    N = cfg.resolved_limit()
    harmonic = prefix_sums(scale_by_power(sieve_unit(N), 1))
    law = AsymptoticLaw.log(1.0, description="sum 1/n ~ ln x + gamma",
                            anchor="sum_{n<=x} 1/n = ln x + gamma + O(1/x)")
    report = _evaluate(law, harmonic, cfg, cfg.grid(start=_two_decade_start(N), ratio=100))
    gamma = euler_gamma(1e-12)
    x = report.checkpoints[-1].x
    residual = abs(harmonic(x) - math.log(x) - gamma.value)
    within = residual <= 1.0 / x + gamma.error_bound
    notes = dict(report.notes, gamma=gamma.value, gamma_error_bound=gamma.error_bound,
                 residual_at_last=residual, residual_bound=1.0 / x)
    verdict = report.verdict if within else FAIL
    return [replace(report, verdict=verdict, notes=notes)]


_RUNNERS = {
    "phi-wintner": phi_wintner,
    "sigma-k-wintner": sigma_k_wintner,
    "phi-over-n": phi_over_n,
    "logmean-3mu": logmean_3mu,
    "logmean-sigma": logmean_sigma,
    "kronecker-sigma-k": kronecker_sigma_k,
    "harmonic-gamma": harmonic_gamma,
}


def run_preset(preset: str, cfg: Optional[VerifyConfig] = None) -> PresetResult:
    if preset not in _RUNNERS:
        raise InvalidArgument(f"unknown preset {preset!r}; choose from {', '.join(PRESETS)}")
    reports = tuple(_RUNNERS[preset](cfg or VerifyConfig()))
    return PresetResult(preset, reports, _combine([r.verdict for r in reports]))

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirichlet_lab.constants import zeta, zeta2_times_zeta3
from dirichlet_lab.errors import InvalidArgument, NumericError, PreconditionViolated
from dirichlet_lab.funcs import (
    IntFunctionTable,
    scale_by_power,
    sieve_epsilon,
    sieve_mobius,
    sieve_phi,
    sieve_sigma_k,
    sieve_unit,
)
from dirichlet_lab.sums import prefix_sums
from dirichlet_lab.verify import (
    AsymptoticLaw,
    decade_checkpoints,
    evaluate_law,
    kronecker_decay_family,
    log_mean_law,
    wintner_law,
)

SERIES_N = 10**7


@pytest.fixture(scope="module")
def mu_long():
    return sieve_mobius(SERIES_N)


def test_law_invariants():
    with pytest.raises(InvalidArgument):
        AsymptoticLaw.power(0, 1.0)
    with pytest.raises(InvalidArgument):
        AsymptoticLaw.power(1, 0.0)
    with pytest.raises(InvalidArgument):
        AsymptoticLaw.power(1, math.inf)
    with pytest.raises(InvalidArgument):
        AsymptoticLaw.little_o(-1)
    AsymptoticLaw.log(0.0)


def test_wintner_mu(mu_long):
    law = wintner_law(mu_long, 1)
    assert law.kind == "power" and law.alpha == 2
    assert abs(law.coefficient - 3 / math.pi**2) < 1e-6


def test_wintner_mu_over_id(mu_long):
    law = wintner_law(scale_by_power(mu_long, 1), 0)
    assert law.alpha == 1
    assert abs(law.coefficient - 1 / zeta(2).value) < 1e-6


@pytest.mark.parametrize("k", [1, 2, 3])
def test_wintner_unit(k):
    law = wintner_law(sieve_unit(SERIES_N), k)
    assert law.coefficient == pytest.approx(zeta(k + 1).value / (k + 1), rel=1e-6)


def test_wintner_rejects_divergent_series():
    # g = 1 with s = 0 is the harmonic series
    with pytest.raises(PreconditionViolated):
        wintner_law(sieve_unit(10**5), 0)


def test_wintner_tail_test_at_short_limit(mu_long):
    # at 10**6 the last decade of sum |mu(n)|/n^2 is ~3.6e-6 of the total
    with pytest.raises(PreconditionViolated):
        wintner_law(sieve_mobius(10**6), 1)


def test_log_mean_laws(mu_long):
    law = log_mean_law(scale_by_power(mu_long, 2), 3)
    assert abs(law.coefficient - 3 / zeta(2).value) < 1e-6
    law = log_mean_law(scale_by_power(sieve_sigma_k(1, SERIES_N), 3), 1)
    assert abs(law.coefficient - zeta2_times_zeta3().value) < 1e-3
    assert log_mean_law(scale_by_power(mu_long, 2), 0).coefficient == 0


def test_log_mean_rejects_divergent():
    with pytest.raises(PreconditionViolated):
        log_mean_law(scale_by_power(sieve_unit(10**5), 1), 1)


def test_evaluate_needs_three_increasing_checkpoints():
    P = prefix_sums(sieve_unit(100))
    law = AsymptoticLaw.power(1, 1.0)
    with pytest.raises(InvalidArgument):
        evaluate_law(law, P, [10, 100])
    with pytest.raises(InvalidArgument):
        evaluate_law(law, P, [10, 10, 100])
    with pytest.raises(InvalidArgument):
        evaluate_law(law, P, [10, 50, 101])


def test_evaluate_non_finite():
    law = AsymptoticLaw.power(1, 1.0)
    with pytest.raises(NumericError):
        evaluate_law(law, lambda x: math.nan, [1, 2, 3])


def test_power_verdicts():
    law = AsymptoticLaw.power(1, 1.0)
    good = {10: 11.0, 100: 100.5, 1000: 1000.1, 10000: 10000.02}
    r = evaluate_law(law, good.get, list(good))
    assert r.verdict == "pass"
    assert [c.deviation for c in r.checkpoints] == pytest.approx([0.1, 5e-3, 1e-4, 2e-6])
    bad = evaluate_law(law, lambda x: 1.01 * x, [10, 100, 1000])
    assert bad.verdict == "fail"
    # final deviation small but growing twice in the last four
    zigzag = {10: 1e-5, 100: 1e-4, 1000: 1e-3, 10000: 5e-4}
    r = evaluate_law(law, lambda x: x * (1 + zigzag[x]), list(zigzag))
    assert r.verdict == "inconclusive"
    assert r.notes["trend_breaks"] == 2


def test_power_single_trend_break_tolerated():
    law = AsymptoticLaw.power(1, 1.0)
    devs = {10: 1e-3, 100: 1e-4, 1000: 2e-4, 10000: 1e-5}
    r = evaluate_law(law, lambda x: x * (1 + devs[x]), list(devs))
    assert r.verdict == "pass" and r.notes["trend_breaks"] == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(-50, 50).filter(bool))
def test_scale_equivariance(c):
    phi = sieve_phi(10**4)
    law = AsymptoticLaw.power(2, 3 / math.pi**2)
    xs = [10, 100, 1000, 10**4]
    base = evaluate_law(law, prefix_sums(phi), xs)
    scaled = evaluate_law(law.scaled(c), prefix_sums(phi.times(c)), xs)
    for a, b in zip(base.checkpoints, scaled.checkpoints):
        assert b.measured == a.measured * c
        assert b.predicted == pytest.approx(a.predicted * c, rel=4.5e-16)
        assert abs(b.deviation - a.deviation) <= np.spacing(1.0)


def test_scale_equivariance_power_of_two_is_exact():
    phi = sieve_phi(10**4)
    law = AsymptoticLaw.power(2, 3 / math.pi**2)
    xs = [10, 100, 1000, 10**4]
    base = evaluate_law(law, prefix_sums(phi), xs)
    scaled = evaluate_law(law.scaled(-8), prefix_sums(phi.times(-8)), xs)
    assert [c.deviation for c in base.checkpoints] == [c.deviation for c in scaled.checkpoints]


@settings(max_examples=200, deadline=None)
@given(
    st.floats(-1e3, 1e3).filter(lambda a: abs(a) > 1e-3),
    st.floats(-1e6, 1e6),
)
def test_log_law_cancels_intercept(A, B):
    xs = [10**2, 10**4, 10**6]
    r = evaluate_law(AsymptoticLaw.log(A), lambda x: A * math.log(x) + B, xs)
    assert abs(r.estimate - A) <= 1e-12 * max(1.0, abs(A)) * max(1.0, abs(B) / abs(A))
    assert r.verdict == "pass"
    assert r.law.intercept_estimate == pytest.approx(B, abs=1e-6 * max(1, abs(B)))


def test_log_law_exact_recovery_moderate_intercept():
    for A, B in [(3 / zeta(2).value, 0.577), (1.0, -12.5), (0.5, 40.0)]:
        r = evaluate_law(AsymptoticLaw.log(A), lambda x: A * math.log(x) + B, [100, 10**4, 10**6])
        assert abs(r.estimate - A) <= 1e-12


def test_little_o_zero_table():
    zero = IntFunctionTable.from_values("0", [0] * 1000)
    r = evaluate_law(AsymptoticLaw.little_o(1), prefix_sums(zero), [10, 100, 1000])
    assert r.verdict == "pass"
    assert all(c.deviation == 0 for c in r.checkpoints)


def test_little_o_sigma_cubic():
    t = sieve_sigma_k(1, 10**6)
    r = evaluate_law(AsymptoticLaw.little_o(3), prefix_sums(t), decade_checkpoints(10**6))
    assert r.verdict == "pass"
    assert r.notes["decay_ratio"] == pytest.approx(1e-3, rel=0.05)


def test_little_o_fails_without_decay():
    r = evaluate_law(AsymptoticLaw.little_o(1), prefix_sums(sieve_unit(1000)), [10, 100, 1000])
    assert r.verdict == "fail"


def test_evaluate_is_deterministic():
    P = prefix_sums(sieve_phi(10**5))
    law = AsymptoticLaw.power(2, 3 / math.pi**2)
    xs = [10**3, 10**4, 10**5]
    assert evaluate_law(law, P, xs) == evaluate_law(law, P, xs)


@pytest.fixture(scope="module")
def sigma1_long():
    return sieve_sigma_k(1, SERIES_N)


def test_kronecker_sigma1(sigma1_long):
    reports = kronecker_decay_family(sigma1_long, 3, 2, decade_checkpoints(10**6))
    assert len(reports) == 3
    assert [r.law.alpha for r in reports] == [2, 1, 1]
    assert all(r.verdict == "pass" for r in reports)
    assert all(r.notes["decay_ratio"] <= 0.1 for r in reports)


def test_kronecker_sigma2():
    f = sieve_sigma_k(2, SERIES_N)
    reports = kronecker_decay_family(f, 4, 3, decade_checkpoints(10**6))
    assert all(r.verdict == "pass" for r in reports)


def test_kronecker_epsilon():
    N = 10**4
    xs = [10, 100, 1000, 10**4]
    s = 3.5
    reports = kronecker_decay_family(sieve_epsilon(N), s, 2, xs, check_divergence=False)
    for k, r in zip((1, 2), reports):
        for c in r.checkpoints:
            assert c.deviation == pytest.approx(1 / c.x ** (s - k), rel=1e-14)
        assert r.verdict == "pass"
    with pytest.raises(PreconditionViolated) as e:
        kronecker_decay_family(sieve_epsilon(N), s, 2, xs)
    assert e.value.hypothesis == "divergence at s-1"


def test_kronecker_preconditions(sigma1_long):
    xs = [10, 100, 1000]
    with pytest.raises(PreconditionViolated) as e:
        kronecker_decay_family(sigma1_long, 3, 3, xs)
    assert e.value.hypothesis == "s - k > 0"
    with pytest.raises(PreconditionViolated) as e:
        kronecker_decay_family(sieve_sigma_k(1, 10**4), 2, 1, xs)
    assert e.value.hypothesis == "convergence at s"


def test_decade_checkpoints():
    assert decade_checkpoints(10**6) == [10**3, 10**4, 10**5, 10**6]
    assert decade_checkpoints(5 * 10**4) == [500, 5000, 50000]
    assert decade_checkpoints(2000) == [20, 200, 2000]
    with pytest.raises(InvalidArgument):
        decade_checkpoints(2)

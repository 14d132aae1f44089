import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirichlet_lab.constants import euler_gamma, zeta, zeta2_times_zeta3
from dirichlet_lab.errors import InvalidArgument, NumericError
from dirichlet_lab.funcs import (
    IntFunctionTable,
    RealFunctionTable,
    scale_by_power,
    sieve_mobius,
    sieve_phi,
    sieve_sigma_k,
    sieve_unit,
)
from dirichlet_lab.sums import (
    abel_partial_sum,
    dirichlet_partial_sum,
    euler_maclaurin_estimate,
    power_sum_asymptote,
    prefix_sums,
)


def inv(x):
    return 1.0 / np.asarray(x, dtype=float)


def inv_prime(x):
    return -1.0 / np.asarray(x, dtype=float) ** 2


def test_prefix_sums_small():
    P = prefix_sums(sieve_phi(10))
    assert P.exact(10) == 32
    assert P(10) == 32.0
    assert prefix_sums(sieve_mobius(2)).exact(2) == 0
    U = prefix_sums(sieve_unit(1000))
    assert all(U(x) == x for x in range(1001))
    assert U(10.7) == 10.0


def test_prefix_sums_exceed_int64_exactly():
    # sum of sigma_3 up to 10**5 is about zeta(4)/4 * 10**20 > 2**63
    t = sieve_sigma_k(3, 10**5)
    P = prefix_sums(t)
    exact = sum(int(v) for v in t.values)
    assert exact > 2**63
    assert P.exact(10**5) == exact
    assert P(10**5) == float(exact)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-2**63, 2**63 - 1), min_size=1, max_size=300))
def test_prefix_differences_exact(v):
    P = prefix_sums(IntFunctionTable.from_values("f", v))
    running = 0
    for x, val in enumerate(v, start=1):
        running += val
        assert P.exact(x) == running
        assert P.exact(x) - P.exact(x - 1) == val
        assert P(x) == pytest.approx(float(running), rel=2.3e-16, abs=2**11)


def test_prefix_real_path_differences():
    t = scale_by_power(sieve_sigma_k(1, 5000), 2)
    c = prefix_sums(t).cumulative
    diffs = np.diff(c)
    assert np.all(np.abs(diffs - t.values) <= np.spacing(np.abs(c[1:])))


def test_prefix_monotone_for_nonnegative():
    c = prefix_sums(sieve_phi(10**4)).cumulative
    assert np.all(np.diff(c) >= 0)


def test_dirichlet_partial_sum_basics():
    assert dirichlet_partial_sum(sieve_unit(5), 1, 1) == 1.0
    with pytest.raises(InvalidArgument):
        dirichlet_partial_sum(sieve_unit(5), 1, 6)
    with pytest.raises(InvalidArgument):
        dirichlet_partial_sum(sieve_unit(5), 1, 0)


@pytest.mark.slow
def test_dirichlet_partial_sum_limits():
    N = 10**6
    assert abs(dirichlet_partial_sum(sieve_sigma_k(1, N), 3, N) - zeta2_times_zeta3().value) < 1e-3
    assert abs(dirichlet_partial_sum(sieve_mobius(N), 2, N) - 1 / zeta(2).value) < 1e-4


@pytest.mark.parametrize("k", [1, 2, 3])
def test_abel_matches_direct(k):
    t = sieve_sigma_k(1, 10**4)
    a, d = abel_partial_sum(t, k, 10**4), dirichlet_partial_sum(t, k, 10**4)
    assert abs(a / d - 1) < 1e-9


def test_abel_edge_cases():
    t = sieve_sigma_k(1, 100)
    assert abel_partial_sum(t, 2.5, 1) == t[1]
    assert abel_partial_sum(sieve_unit(100), 0, 100) == 100.0


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.floats(-1e6, 1e6), min_size=2, max_size=400),
    st.floats(0.0, 4.0),
)
def test_abel_is_a_rearrangement(v, k):
    t = RealFunctionTable.from_values("f", v)
    x = len(v)
    direct = dirichlet_partial_sum(t, k, x)
    scale = float(np.sum(np.abs(v)))
    assert abs(abel_partial_sum(t, k, x) - direct) <= 1e-9 * max(scale, 1.0)


def test_euler_maclaurin_harmonic_gives_gamma():
    # sum_{1<n<=x} 1/n = ln x + C + O(1/x), and gamma = 1 + C
    est = euler_maclaurin_estimate(inv, inv_prime, 1, 1e6)
    gamma = euler_gamma(1e-8)
    assert abs((1 + est.C) - gamma.value) < 1e-10 + gamma.error_bound
    harmonic = math.fsum(1.0 / n for n in range(1, 10**6 + 1))
    assert abs(harmonic - math.log(1e6) - (1 + est.C)) < 1e-6
    assert est.error_bound == pytest.approx(1e-6)


def test_euler_maclaurin_closed_form_integral():
    est = euler_maclaurin_estimate(inv, inv_prime, 1, 1e6, antiderivative=np.log)
    assert est.integral == pytest.approx(math.log(1e6), rel=1e-15)


def test_euler_maclaurin_zero():
    zero = lambda x: np.zeros_like(np.asarray(x, dtype=float))  # noqa: E731
    est = euler_maclaurin_estimate(zero, zero, 1, 100)
    assert est.integral == 0 and est.C == 0 and est.error_bound == 0


def test_euler_maclaurin_inverse_square():
    g = lambda x: np.asarray(x, dtype=float) ** -2  # noqa: E731
    gp = lambda x: -2 * np.asarray(x, dtype=float) ** -3  # noqa: E731
    est = euler_maclaurin_estimate(g, gp, 1, 1000)
    # direct sum over 1 < n <= 1000, computed once by brute force
    assert abs(est.value - 0.6439345666815576) < 1e-6


def test_euler_maclaurin_non_integer_start():
    est = euler_maclaurin_estimate(inv, inv_prime, 1.5, 1e4)
    direct = math.fsum(1.0 / n for n in range(2, 10**4 + 1))
    assert abs(est.value - direct) < 1e-4


def test_euler_maclaurin_non_convergent():
    # growing oscillation: the tail estimate never settles
    g = lambda x: np.asarray(x, dtype=float) * np.cos(x)  # noqa: E731
    gp = lambda x: np.cos(x) - np.asarray(x, dtype=float) * np.sin(x)  # noqa: E731
    with pytest.raises(NumericError):
        euler_maclaurin_estimate(g, gp, 1, 10)


def test_euler_maclaurin_non_finite():
    g = lambda x: np.full_like(np.asarray(x, dtype=float), np.nan)  # noqa: E731
    with pytest.raises(NumericError):
        euler_maclaurin_estimate(inv, g, 1, 10)


def test_power_sum_asymptote():
    assert power_sum_asymptote(0, 100) == 100
    assert power_sum_asymptote(1, 10) == 50
    assert abs(power_sum_asymptote(1, 10) - 55) <= 10
    s = sum(n * n for n in range(1, 1001))
    assert abs(power_sum_asymptote(2, 1000) / s - 1) < 2e-3


@pytest.mark.parametrize("s", [0, 1, 2])
def test_power_sum_deviation_is_order_x_to_s(s):
    ratios = []
    for x in (10**2, 10**3, 10**4):
        direct = sum(n**s for n in range(1, x + 1))
        ratios.append(abs(power_sum_asymptote(s, x) - direct) / x**s)
    assert max(ratios) <= 2

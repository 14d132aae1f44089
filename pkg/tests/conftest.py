import pytest

from dirichlet_lab.funcs import (
    sieve_id_pow,
    sieve_mobius,
    sieve_phi,
    sieve_sigma_k,
    sieve_unit,
)


@pytest.fixture(scope="session")
def tables_1e4():
    N = 10**4
    return {
        "mu": sieve_mobius(N),
        "phi": sieve_phi(N),
        "sigma0": sieve_sigma_k(0, N),
        "sigma1": sieve_sigma_k(1, N),
        "sigma2": sieve_sigma_k(2, N),
        "unit": sieve_unit(N),
        "id": sieve_id_pow(1, N),
    }


@pytest.fixture(scope="session")
def tables_1e5():
    N = 10**5
    return {
        "mu": sieve_mobius(N),
        "phi": sieve_phi(N),
        "unit": sieve_unit(N),
        **{f"id{k}": sieve_id_pow(k, N) for k in (0, 1, 2)},
        **{f"sigma{k}": sieve_sigma_k(k, N) for k in (0, 1, 2)},
    }


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for i in sorted(RESULTS):
        ok, detail = RESULTS[i]
        terminalreporter.write_line(f"criterion {i}: {'PASS' if ok else 'FAIL'}  {detail}")

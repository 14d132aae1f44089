"""Arithmetic-function tables, Dirichlet convolution and empirical checks of
summatory-function asymptotics."""

from .constants import ConstantValue, euler_gamma, zeta
from .convolve import convolve_naive, dirichlet_convolve
from .errors import (
    DirichletLabError,
    DomainError,
    InvalidArgument,
    NumericError,
    PreconditionViolated,
    TableOverflowError,
)
from .funcs import (
    IntFunctionTable,
    RealFunctionTable,
    oracle_value,
    scale_by_power,
    sieve_epsilon,
    sieve_id_pow,
    sieve_mobius,
    sieve_phi,
    sieve_sigma_k,
    sieve_unit,
)
from .sums import (
    EulerMaclaurinEstimate,
    PrefixSums,
    abel_partial_sum,
    dirichlet_partial_sum,
    euler_maclaurin_estimate,
    power_sum_asymptote,
    prefix_sums,
)
from .verify import (
    AsymptoticLaw,
    Checkpoint,
    VerificationReport,
    evaluate_law,
    kronecker_decay_family,
    log_mean_law,
    wintner_law,
)

__version__ = "0.1.0"

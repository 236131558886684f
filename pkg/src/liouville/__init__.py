"""Completely multiplicative +-1 functions attached to prime sets.

Evaluation and summatory sieves for the set-attached sign function, truncated
Dirichlet products with certified error bounds, exact mean-value brackets and
the greedy realization of arbitrary mean values, and character-like functions
with an O(log n) digit-expansion summatory formula.
"""

from .arith import (
    DigitExpansion,
    Factorization,
    digits,
    factorize,
    is_prime,
    legendre,
    legendre_value_table,
    next_prime,
    omega,
    prev_prime,
    primes_up_to,
    totient_sigma,
)
from .charlike import (
    CharacterProfile,
    CharacterTable,
    ScanRecord,
    SummatoryExtremum,
    character_profile,
    classify_lplus,
    lambda_p,
    lambda_p_prime,
    llp_identity_check,
    lmax,
    log_bound_scan,
    max_abs_summatory,
    summatory_char,
    summatory_digit,
    summatory_digit_batch,
    summatory_sieve,
)
from .config import Budgets, budgets
from .dirichlet import DirichletValue, dirichlet_eval, series_partial, zeta_em
from .errors import (
    DomainError,
    LiouvilleError,
    ResourceLimitError,
    UndecidableError,
    ValidationError,
)
from .genliouville import (
    PeriodViolationReport,
    PeriodWitness,
    SummatoryTrace,
    harmonic_sum,
    lambda_a,
    omega_a,
    period_violation,
    summatory,
)
from .meanvalue import (
    DensityEstimate,
    GreedyConstruction,
    MeanValueBracket,
    PhiSigmaSearch,
    empirical_mean,
    greedy_construct,
    kappa_estimate,
    limit_sequence,
    mean_value,
    phi_sigma_target,
    wirsing_constant,
)
from .primesets import (
    AllPrimesSet,
    ComplementSet,
    CubeGapSet,
    EmptySet,
    FiniteSet,
    NonResidueSet,
    PrimeSet,
    ResidueClassSet,
    TailSet,
    make_prime_set,
    parse_prime_set,
)

__version__ = "0.1.0"

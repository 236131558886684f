"""Resource budgets.

The sieve budget can be raised or lowered through the environment variable
``LIOUVILLE_SIEVE_BUDGET``; everything else is fixed at desk scale.
"""

import os
from dataclasses import dataclass


@dataclass(frozen=True)
class Budgets:
    sieve_limit: int = 1_000_000_000   # largest x any direct sieve accepts
    path_limit: int = 10_000_000       # largest x with a fully materialized prefix path
    factor_limit: int = 2**63          # width cap for factorization-based evaluation
    digit_limit: int = 10**18          # largest n for digit-formula benchmark cells
    chain_limit: int = 1_000_000       # longest index chain scanned per period candidate
    segment: int = 1 << 20             # sieve segment length
    greedy_prime_limit: int = 10**18   # largest candidate prime the greedy search will seek


def budgets() -> Budgets:
    env = os.environ.get("LIOUVILLE_SIEVE_BUDGET")
    if env is None:
        return Budgets()
    return Budgets(sieve_limit=int(env))

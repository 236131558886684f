"""Pointwise and summatory evaluation of the +-1 completely multiplicative
function attached to a prime set.

For a prime set A, lambda_A is the completely multiplicative function taking
-1 on primes in A and +1 on primes outside, i.e. lambda_A(n) = (-1)**omega_A(n)
with omega_A counting prime factors from A with multiplicity.

The summatory function is evaluated with a segmented sign-flip sieve: inside
each fixed-size segment every prime power q^e flips the sign of its multiples
(when q is in A) while a parallel cofactor array divides q out, so the one
prime factor above sqrt(x) that may survive per integer is recovered exactly
and tested against the set in bulk. No integer is ever factored one by one.
Segments are reduced in order, so results are independent of scheduling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import arith
from .config import budgets
from .errors import DomainError, ResourceLimitError
from .primesets import PrimeSet, make_prime_set


@dataclass
class SummatoryTrace:
    """Value of a summatory function at x with running extrema of its prefix path.

    path, when present, holds the prefix sums for n = 1..x; consecutive
    entries differ by exactly 1 and value has the parity of x.
    """

    x: int
    value: int
    path: np.ndarray | None
    running_min: int
    running_max: int


def omega_a(n, pset) -> int:
    """Number of prime factors of n (with multiplicity) lying in the set."""
    pset = make_prime_set(pset)
    n = arith.as_natural(n, "n")
    if n == 0:
        raise DomainError("omega_a is undefined at 0")
    return sum(e for p, e in arith.factorize(n).factors if pset.contains(p))


def lambda_a(n, pset) -> int:
    """(-1)**omega_a(n); the completely multiplicative sign attached to the set."""
    return -1 if omega_a(n, pset) % 2 else 1


def _signed_segment(lo: int, hi: int, base_primes, base_flags, pset) -> np.ndarray:
    """lambda_A values for n in [lo, hi) as an int8 array."""
    length = hi - lo
    lam = np.ones(length, dtype=np.int8)
    cof = np.arange(lo, hi, dtype=np.int64)
    top = hi - 1
    for q, in_a in zip(base_primes, base_flags):
        q = int(q)
        if q * q > top:
            break
        m = q
        while m <= top:
            start = ((lo + m - 1) // m) * m
            if start > top:
                break
            sl = slice(start - lo, length, m)
            if in_a:
                lam[sl] = -lam[sl]
            cof[sl] //= q
            m *= q
    big = cof > 1
    if big.any():
        hit = pset.contains_batch(cof[big])
        if hit.any():
            idx = np.flatnonzero(big)[hit]
            lam[idx] = -lam[idx]
    return lam


def _signed_segments(x: int, pset):
    """Yield (lo, hi, lam) over [1, x] in fixed-size segments, in order."""
    seg = budgets().segment
    base = arith.primes_up_to(math.isqrt(x)) if x >= 4 else np.empty(0, dtype=np.int64)
    flags = [pset.contains(int(q)) for q in base]
    for lo in range(1, x + 1, seg):
        hi = min(lo + seg, x + 1)
        yield lo, hi, _signed_segment(lo, hi, base, flags, pset)


def summatory(x, pset, with_path: bool = False) -> SummatoryTrace:
    """Exact summatory value sum_{n<=x} lambda_A(n) via the segmented sieve."""
    pset = make_prime_set(pset)
    x = arith.as_natural(x, "x")
    b = budgets()
    if x > b.sieve_limit:
        raise ResourceLimitError(f"summatory x={x} exceeds sieve budget {b.sieve_limit}")
    if with_path and x > b.path_limit:
        raise ResourceLimitError(f"path materialization is capped at x={b.path_limit}")
    if x == 0:
        return SummatoryTrace(0, 0, np.empty(0, dtype=np.int64) if with_path else None, 0, 0)
    path = np.empty(x, dtype=np.int64) if with_path else None
    value = 0
    rmin: int | None = None
    rmax: int | None = None
    for lo, hi, lam in _signed_segments(x, pset):
        c = np.cumsum(lam, dtype=np.int64)
        seg_min = value + int(c.min())
        seg_max = value + int(c.max())
        rmin = seg_min if rmin is None else min(rmin, seg_min)
        rmax = seg_max if rmax is None else max(rmax, seg_max)
        if with_path:
            np.add(c, value, out=c)
            path[lo - 1 : hi - 1] = c
            value = int(c[-1])
        else:
            value += int(c[-1])
    return SummatoryTrace(x, value, path, int(rmin), int(rmax))


def harmonic_sum(x, pset) -> float:
    """Partial sum of lambda_A(n)/n for n <= x, compensated across segments."""
    pset = make_prime_set(pset)
    x = arith.as_natural(x, "x")
    if x < 1:
        raise DomainError("harmonic_sum needs x >= 1")
    if x > budgets().sieve_limit:
        raise ResourceLimitError(f"harmonic_sum x={x} exceeds sieve budget")
    parts = []
    for lo, hi, lam in _signed_segments(x, pset):
        inv = 1.0 / np.arange(lo, hi, dtype=np.float64)
        parts.append(float(np.where(lam > 0, inv, -inv).sum()))
    return math.fsum(parts)


@dataclass(frozen=True)
class PeriodWitness:
    """Indices n and n+k (both past the preperiod) with differing signs."""

    k: int
    n: int
    partner: int
    left: int
    right: int


@dataclass
class PeriodViolationReport:
    set_label: str
    preperiod_bound: int
    period_bound: int
    witnesses: list[PeriodWitness] = field(default_factory=list)
    inconclusive: list[int] = field(default_factory=list)

    @property
    def all_found(self) -> bool:
        return not self.inconclusive


def period_violation(pset, preperiod_bound, period_bound) -> PeriodViolationReport:
    """Witness pairs showing the sign sequence is not eventually periodic.

    For each candidate period k <= period_bound, walk the arithmetic
    progression n0*k, n0*k + k, ..., p*n0*k where p is the smallest prime of
    the set and n0*k exceeds the preperiod bound. The endpoints carry opposite
    signs because lambda_A(p*m) = -lambda_A(m), so some adjacent pair along
    the walk must already disagree; that pair is the witness. A candidate is
    reported inconclusive (never silently skipped) if its walk would exceed
    the chain budget.
    """
    pset = make_prime_set(pset)
    m_bound = arith.as_natural(preperiod_bound, "preperiod_bound")
    k_bound = arith.as_natural(period_bound, "period_bound")
    if m_bound < 1 or k_bound < 1:
        raise DomainError("preperiod and period bounds must be at least 1")
    p = pset.first_prime()
    if p is None:
        raise DomainError(
            "period violation needs a nonempty prime set (the empty set gives the constant sequence)"
        )
    report = PeriodViolationReport(pset.label, m_bound, k_bound)
    for k in range(1, k_bound + 1):
        n0 = m_bound // k + 1
        steps = (p - 1) * n0
        if steps + 1 > budgets().chain_limit:
            report.inconclusive.append(k)
            continue
        pos = n0 * k
        prev = lambda_a(pos, pset)
        witness = None
        for _ in range(steps):
            cur = lambda_a(pos + k, pset)
            if cur != prev:
                witness = PeriodWitness(k, pos, pos + k, prev, cur)
                break
            pos += k
            prev = cur
        if witness is None:
            # unreachable: the endpoints differ by construction
            report.inconclusive.append(k)
        else:
            report.witnesses.append(witness)
    return report

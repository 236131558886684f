"""Exact integer primitives: prime sieves, factorization, Legendre symbols,
totient/sigma, and base-p digit expansions.

All functions are pure and deterministic. Factorization-based evaluation is
capped at 63-bit inputs; digit-based operations accept arbitrarily large
naturals, given either as ints or as decimal strings.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .config import budgets
from .errors import DomainError, ResourceLimitError

# Deterministic Miller-Rabin witness set, valid for every n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_TRIAL_BOUND = 4096


def as_natural(n, name: str = "n") -> int:
    """Coerce an int or decimal string to a nonnegative Python int."""
    if isinstance(n, str):
        text = n.strip()
        if not text or not text.isdigit():
            raise DomainError(f"{name} must be a decimal natural number, got {n!r}")
        return int(text)
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise DomainError(f"{name} must be an integer, got {type(n).__name__}")
    value = int(n)
    if value < 0:
        raise DomainError(f"{name} must be nonnegative, got {value}")
    return value


def primes_up_to(limit) -> np.ndarray:
    """All primes <= limit, ascending, as an int64 array."""
    limit = as_natural(limit, "limit")
    if limit > budgets().sieve_limit:
        raise ResourceLimitError(
            f"sieve request {limit} exceeds the configured budget {budgets().sieve_limit}"
        )
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test (exact below 3.3e24)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    c = max(n + 1, 2)
    if c == 2:
        return 2
    if c % 2 == 0:
        c += 1
    while not is_prime(c):
        c += 2
    return c


def prev_prime(n: int):
    """Largest prime <= n, or None if there is none."""
    if n < 2:
        return None
    if n == 2:
        return 2
    c = n if n % 2 else n - 1
    while c > 2 and not is_prime(c):
        c -= 2
    return c if is_prime(c) else 2


@dataclass(frozen=True)
class Factorization:
    """Canonical factorization n = prod p^e with primes strictly increasing."""

    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def omega(self) -> int:
        """Number of prime factors counted with multiplicity."""
        return sum(e for _, e in self.factors)

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0


def _brent_rho(n: int) -> int:
    # n odd composite, no factor below the trial bound
    if n % 2 == 0:
        return 2
    seed = 1
    while True:
        y, c, m = 2 + seed, 1 + seed, 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        seed += 1


@lru_cache(maxsize=1 << 15)
def _factor_int(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    m = n
    for p in range(2, _TRIAL_BOUND):
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    if m > 1:
        if is_prime(m):
            out.append((m, 1))
        else:
            stack = [m]
            found: Counter = Counter()
            while stack:
                v = stack.pop()
                if is_prime(v):
                    found[v] += 1
                    continue
                d = _brent_rho(v)
                stack.append(d)
                stack.append(v // d)
            out.extend(sorted(found.items()))
    return tuple(sorted(out))


def factorize(n) -> Factorization:
    """Canonical factorization of n >= 1; trial division plus Pollard rho."""
    n = as_natural(n, "n")
    if n == 0:
        raise DomainError("factorize is undefined at 0")
    if n >= budgets().factor_limit:
        raise ResourceLimitError(
            f"factorization is capped at {budgets().factor_limit} (got {n})"
        )
    if n == 1:
        return Factorization(1, ())
    return Factorization(n, _factor_int(n))


def omega(n) -> int:
    """Number of prime factors of n counted with multiplicity."""
    return factorize(n).omega


def _require_odd_prime(p: int) -> int:
    p = as_natural(p, "p")
    if p == 2:
        raise DomainError("p must be an odd prime, got 2")
    if not is_prime(p):
        raise DomainError(f"p must be an odd prime, got {p}")
    return p


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for odd prime p, via Euler's criterion."""
    p = _require_odd_prime(p)
    a = int(a) % p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


_SCRATCH: dict = {}


def _scratch(name: str, size: int, dtype) -> np.ndarray:
    # grow-only temporaries; bulk sweeps over many p would otherwise spend
    # most of their time faulting in fresh pages
    buf = _SCRATCH.get(name)
    if buf is None or buf.size < size or buf.dtype != np.dtype(dtype):
        buf = np.empty(size, dtype)
        _SCRATCH[name] = buf
    return buf[:size]


def _legendre_values(p: int) -> np.ndarray:
    # squares-marking construction; independent of the Euler-criterion route
    v = np.full(p, -1, dtype=np.int8)
    v[0] = 0
    half = (p - 1) // 2
    k = _scratch("leg_k", half, np.int64)
    k[:] = np.arange(1, half + 1)
    sq = np.multiply(k, k, out=_scratch("leg_sq", half, np.int64))
    r = np.mod(sq, p, out=sq)
    v[r] = 1
    return v


@lru_cache(maxsize=128)
def legendre_value_table(p: int) -> np.ndarray:
    """Read-only int8 table of (l/p) for 0 <= l < p."""
    p = _require_odd_prime(p)
    v = _legendre_values(p)
    v.setflags(write=False)
    return v


def totient_sigma(n) -> tuple[int, int]:
    """(phi(n), sigma(n)) evaluated multiplicatively from the factorization."""
    fac = factorize(n)
    phi = 1
    sigma = 1
    for p, e in fac.factors:
        phi *= p ** (e - 1) * (p - 1)
        sigma *= (p ** (e + 1) - 1) // (p - 1)
    return phi, sigma


@dataclass(frozen=True)
class DigitExpansion:
    """Base-p expansion of n, least significant digit first.

    counts[l] is the number of digits equal to l; digits absent from the
    expansion are simply missing from the mapping.
    """

    n: int
    base: int
    digits: tuple[int, ...]
    counts: Counter

    def count(self, l: int) -> int:
        return self.counts.get(l, 0)


def digits(n, p: int) -> DigitExpansion:
    """Base-p digit expansion with per-digit counts; n = 0 gives no digits."""
    n = as_natural(n, "n")
    p = as_natural(p, "p")
    if not is_prime(p):
        raise DomainError(f"base must be prime, got {p}")
    ds = []
    m = n
    while m:
        ds.append(m % p)
        m //= p
    return DigitExpansion(n, p, tuple(ds), Counter(ds))

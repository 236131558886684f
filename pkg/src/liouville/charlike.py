"""Character-like completely multiplicative functions attached to an odd prime p.

lambda_p is the completely multiplicative function with lambda_p(p) = 1 and
lambda_p(q) = (q/p) at every other prime; writing n = p^k * m with p not
dividing m gives lambda_p(n) = (m/p), so evaluation never factors m. Its
summatory function satisfies the digit identity

    L_p(n) = sum_l N(n, l) * S_l,

where N(n, l) counts base-p digits of n equal to l and S_l is the prefix sum
of the quadratic character, which makes L_p(n) computable in O(log_p n) after
an O(p) profile build. The same identity for an arbitrary non-principal
character chi mod p covers the completely multiplicative extension that is 1
at p and chi elsewhere.

Also here: the direct sieve accumulation (the O(n) oracle the digit formula is
benchmarked against), the classification of primes whose summatory function
stays nonnegative, exact per-power extrema, and logarithmic growth scans.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import arith
from .config import budgets
from .errors import DomainError, ResourceLimitError, ValidationError
from .genliouville import SummatoryTrace

_CHUNK = 1 << 20


@dataclass(frozen=True)
class CharacterProfile:
    """Quadratic-character data mod p used by every digit-formula evaluation.

    values[l] = (l/p); prefix_sums[k] = S_k = sum_{m<=k} (m/p). S_0 and
    S_{p-1} both vanish. all_nonneg records whether every S_k with
    1 <= k <= p-1 is nonnegative, and argmax_digits lists the digits
    attaining |S_l| = max_abs.
    """

    p: int
    values: np.ndarray
    prefix_sums: np.ndarray
    max_abs: int
    all_nonneg: bool
    argmax_digits: tuple[int, ...]


@lru_cache(maxsize=256)
def character_profile(p: int) -> CharacterProfile:
    p = arith._require_odd_prime(p)
    values = arith.legendre_value_table(p)
    # int32 prefix sums: |S_k| < p, and p stays far below 2^31 here
    prefix = np.empty(p, dtype=np.int32)
    np.cumsum(values, dtype=np.int32, out=prefix)
    if prefix[-1] != 0:
        raise AssertionError("character prefix sums must vanish over a full period")
    prefix.setflags(write=False)
    absp = np.abs(prefix, out=arith._scratch("prof_abs", p, np.int32))
    max_abs = int(absp.max())
    all_nonneg = bool(prefix[1:].min() >= 0)
    argmax = tuple(int(l) for l in np.flatnonzero(absp == max_abs))
    return CharacterProfile(p, values, prefix, max_abs, all_nonneg, argmax)


@lru_cache(maxsize=256)
def _prefix_list(p: int) -> tuple[int, ...]:
    return tuple(int(v) for v in character_profile(p).prefix_sums)


def lambda_p(n, p: int) -> int:
    """Sign at n: strip powers of p, then read the character of the cofactor.

    Accepts arbitrarily large n (int or decimal string); cost is O(log n).
    """
    prof = character_profile(p)
    n = arith.as_natural(n, "n")
    if n == 0:
        raise DomainError("lambda_p is undefined at 0")
    while n % p == 0:
        n //= p
    return int(prof.values[n % p])


def lambda_p_prime(n, p: int) -> int:
    """Opposite-signed companion: fixed to +1 at p, -(q/p) at other primes q.

    Needs the factorization of n, so n is capped at the 63-bit width.
    """
    prof = character_profile(p)
    n = arith.as_natural(n, "n")
    if n == 0:
        raise DomainError("lambda_p_prime is undefined at 0")
    out = 1
    for q, e in arith.factorize(n).factors:
        if q == p:
            continue
        v = -int(prof.values[q % p])
        if e % 2:
            out *= v
    return out


@dataclass(frozen=True)
class SignFactorizationCheck:
    """Decomposition of the classical Liouville sign at n through the pair
    of character-like functions: lambda(n) = (-1)^k lambda_p(n) lambda_p'(n)
    with p^k exactly dividing n."""

    n: int
    p: int
    k: int
    liouville: int
    char_like: int
    char_like_prime: int

    @property
    def holds(self) -> bool:
        return self.liouville == (-1) ** self.k * self.char_like * self.char_like_prime


def llp_identity_check(n, p: int) -> SignFactorizationCheck:
    n = arith.as_natural(n, "n")
    if n == 0:
        raise DomainError("the identity is stated for n >= 1")
    prof = character_profile(p)
    k = arith.factorize(n).exponent(prof.p)
    liou = -1 if arith.omega(n) % 2 else 1
    return SignFactorizationCheck(
        n, prof.p, k, liou, lambda_p(n, prof.p), lambda_p_prime(n, prof.p)
    )


def summatory_digit(n, p: int) -> int:
    """L_p(n) through the digit identity; exact, O(log_p n), any size of n."""
    s = _prefix_list(p)
    d = arith.as_natural(n, "n")
    total = 0
    while d:
        total += s[d % p]
        d //= p
    return total


def summatory_digit_batch(x: int, p: int) -> np.ndarray:
    """L_p(n) for every n = 1..x as an int64 array (vectorized digit identity)."""
    prof = character_profile(p)
    x = arith.as_natural(x, "x")
    out = np.zeros(x, dtype=np.int64)
    m = np.arange(1, x + 1, dtype=np.int64)
    s = prof.prefix_sums
    while m.max(initial=0) > 0:
        out += s[m % p]
        m //= p
    return out


def digit_count_batch(x: int, p: int, digit: int) -> np.ndarray:
    """Number of base-p digits equal to ``digit`` for every n = 1..x."""
    x = arith.as_natural(x, "x")
    out = np.zeros(x, dtype=np.int64)
    m = np.arange(1, x + 1, dtype=np.int64)
    while m.max(initial=0) > 0:
        out += (m % p == digit) & (m > 0)
        m //= p
    return out


def digit_length_batch(x: int, p: int) -> np.ndarray:
    """Number of base-p digits of every n = 1..x."""
    x = arith.as_natural(x, "x")
    out = np.zeros(x, dtype=np.int64)
    m = np.arange(1, x + 1, dtype=np.int64)
    while m.max(initial=0) > 0:
        out += m > 0
        m //= p
    return out


@dataclass(frozen=True)
class CharacterTable:
    """A non-principal character mod an odd prime, as a dense value table.

    chi[0] must vanish, the values must be completely multiplicative on
    residues, not identically 1 away from 0, and sum to 0 over a full period.
    Violations raise ValidationError. Real tables make the summatory values
    exact integers; complex tables give complex sums.
    """

    p: int
    chi: np.ndarray

    def __post_init__(self):
        p = self.p
        if not arith.is_prime(p) or p == 2:
            raise ValidationError(f"character modulus must be an odd prime, got {p}")
        chi = np.asarray(self.chi, dtype=np.complex128)
        if chi.shape != (p,):
            raise ValidationError(f"character table must have length {p}")
        if p > 4096:
            raise ValidationError("character table validation is quadratic; keep p <= 4096")
        object.__setattr__(self, "chi", chi)
        if abs(chi[0]) > 1e-12:
            raise ValidationError("chi(0) must vanish")
        if abs(chi.sum()) > 1e-9:
            raise ValidationError("character values must sum to 0 over a period")
        a = np.arange(p)
        prod_idx = (a[:, None] * a[None, :]) % p
        if not np.allclose(chi[prod_idx], chi[:, None] * chi[None, :], atol=1e-9):
            raise ValidationError("character table is not completely multiplicative")
        if np.allclose(chi[1:], 1.0, atol=1e-12):
            raise ValidationError("principal character tables are rejected")

    @classmethod
    def quadratic(cls, p: int) -> "CharacterTable":
        return cls(p, character_profile(p).values.astype(np.complex128))

    @property
    def is_real(self) -> bool:
        return bool(np.allclose(self.chi.imag, 0.0, atol=1e-12))

    @property
    def prefix(self) -> np.ndarray:
        return np.cumsum(self.chi)


def summatory_char(n, table: CharacterTable):
    """Digit-identity summatory value of the multiplicative extension of chi
    that equals 1 at its modulus; integer for real tables, complex otherwise."""
    t = table.prefix
    d = arith.as_natural(n, "n")
    total = 0j
    while d:
        total += t[d % table.p]
        d //= table.p
    if table.is_real:
        r = total.real
        k = round(r)
        if abs(r - k) > 1e-6:
            raise AssertionError("real character produced a non-integral summatory value")
        return int(k)
    return complex(total)


def _lambda_p_values(m: int, p: int, table: np.ndarray) -> np.ndarray:
    """v[n] = lambda_p(n) for 0 <= n <= m (v[0] = 0), as int8, chunked."""
    v = np.empty(m + 1, dtype=np.int8)
    v[0] = 0
    for lo in range(1, m + 1, _CHUNK):
        hi = min(lo + _CHUNK, m + 1)
        idx = np.arange(lo, hi, dtype=np.int64)
        v[lo:hi] = table[idx % p]
    base = p
    while base <= m:
        top = m // base
        for lo in range(1, top + 1, _CHUNK):
            hi = min(lo + _CHUNK, top + 1)
            t = np.arange(lo, hi, dtype=np.int64)
            t = t[t % p != 0]
            v[t * base] = table[t % p]
        base *= p
    return v


def summatory_sieve(x, p: int, with_path: bool = False) -> SummatoryTrace:
    """L_p(x) by direct accumulation over 1..x; the O(n) counterpart of the
    digit formula, used as its independent check and benchmark baseline."""
    prof = character_profile(p)
    x = arith.as_natural(x, "x")
    b = budgets()
    if x > b.sieve_limit:
        raise ResourceLimitError(f"summatory sieve x={x} exceeds budget {b.sieve_limit}")
    if with_path and x > b.path_limit:
        raise ResourceLimitError(f"path materialization is capped at x={b.path_limit}")
    if x == 0:
        return SummatoryTrace(0, 0, np.empty(0, dtype=np.int64) if with_path else None, 0, 0)
    table = prof.values
    if with_path or x <= _CHUNK:
        v = _lambda_p_values(x, p, table)
        c = np.cumsum(v[1:], dtype=np.int64)
        return SummatoryTrace(
            x, int(c[-1]), c if with_path else None, int(c.min()), int(c.max())
        )
    prefix = _lambda_p_values(x // p, p, table)
    value = 0
    rmin: int | None = None
    rmax: int | None = None
    for lo in range(1, x + 1, _CHUNK):
        hi = min(lo + _CHUNK, x + 1)
        idx = np.arange(lo, hi, dtype=np.int64)
        vals = table[idx % p]
        start = ((lo + p - 1) // p) * p
        if start < hi:
            mult = np.arange(start, hi, p, dtype=np.int64)
            vals[mult - lo] = prefix[mult // p]
        c = np.cumsum(vals, dtype=np.int64)
        seg_min = value + int(c.min())
        seg_max = value + int(c.max())
        rmin = seg_min if rmin is None else min(rmin, seg_min)
        rmax = seg_max if rmax is None else max(rmax, seg_max)
        value += int(c[-1])
    return SummatoryTrace(x, value, None, int(rmin), int(rmax))


def _prefixes_stay_nonneg(p: int) -> bool:
    values = arith._legendre_values(p)
    c = np.cumsum(values, dtype=np.int32)
    return bool(c[1:].min() >= 0)


def classify_lplus(limit) -> list[int]:
    """Odd primes p <= limit whose summatory function L_p(n) is never negative.

    By the digit identity this holds exactly when every character prefix sum
    S_k (1 <= k <= p-1) is nonnegative, so each prime costs O(p).
    """
    limit = arith.as_natural(limit, "limit")
    if limit < 3:
        raise DomainError("classification starts at 3")
    out = []
    for p in arith.primes_up_to(limit):
        p = int(p)
        if p == 2:
            continue
        if _prefixes_stay_nonneg(p):
            out.append(p)
    return out


@dataclass(frozen=True)
class SummatoryExtremum:
    """max |L_p(n)| over n < p^i, with the witness family attaining it.

    The maximum is i times the single-digit maximum, attained at
    n = l * (1 + p + ... + p^(i-1)) for each digit l with |S_l| maximal.
    """

    p: int
    i: int
    max_value: int
    digits: tuple[int, ...]
    witnesses: tuple[int, ...]


def lmax(p: int, i) -> SummatoryExtremum:
    prof = character_profile(p)
    i = arith.as_natural(i, "i")
    if i < 1:
        raise DomainError("the exponent i must be at least 1")
    repunit = (prof.p**i - 1) // (prof.p - 1)
    return SummatoryExtremum(
        prof.p,
        i,
        i * prof.max_abs,
        prof.argmax_digits,
        tuple(l * repunit for l in prof.argmax_digits),
    )


def max_abs_summatory(t, p: int) -> int:
    """Exact max over 1 <= n <= t of |L_p(n)|, by digit-wise dynamic programming.

    Walk the base-p digits of t from the most significant: choosing a smaller
    digit frees the remaining positions, whose contribution ranges between
    j*min(S) and j*max(S). Cost O(log_p t), so t may be astronomically large.
    """
    prof = character_profile(p)
    t = arith.as_natural(t, "t")
    if t == 0:
        return 0
    s = _prefix_list(p)
    smax_upto = []
    smin_upto = []
    hi = lo = s[0]
    for v in s:
        hi = max(hi, v)
        lo = min(lo, v)
        smax_upto.append(hi)
        smin_upto.append(lo)
    smax, smin = smax_upto[-1], smin_upto[-1]
    ds = arith.digits(t, prof.p).digits[::-1]
    best_hi = None
    best_lo = None
    pref = 0
    for j, a in enumerate(ds):
        free = len(ds) - 1 - j
        if a > 0:
            cand_hi = pref + smax_upto[a - 1] + free * smax
            cand_lo = pref + smin_upto[a - 1] + free * smin
            best_hi = cand_hi if best_hi is None else max(best_hi, cand_hi)
            best_lo = cand_lo if best_lo is None else min(best_lo, cand_lo)
        pref += s[a]
    best_hi = pref if best_hi is None else max(best_hi, pref)
    best_lo = pref if best_lo is None else min(best_lo, pref)
    return max(best_hi, -best_lo)


@dataclass(frozen=True)
class ScanRecord:
    t: int
    max_abs: int
    ratio: float


def log_bound_scan(p: int, x) -> list[ScanRecord]:
    """Per-decade running maxima of |L_p| and their ratio to log t.

    Maxima come from the digit dynamic program, so the scan extends far past
    any sieve budget while remaining exact; bounded ratios across decades
    exhibit the logarithmic growth of the summatory function.
    """
    prof = character_profile(p)
    x = arith.as_natural(x, "x")
    if x < 10:
        raise DomainError("scan expects x >= 10")
    ts = []
    t = 10
    while t <= x:
        ts.append(t)
        t *= 10
    if ts[-1] != x:
        ts.append(x)
    return [
        ScanRecord(t, m, m / math.log(t))
        for t in ts
        for m in (max_abs_summatory(t, prof.p),)
    ]

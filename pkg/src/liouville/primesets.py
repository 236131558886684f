"""Prime-set abstraction: membership, enumeration, and reciprocal-sum metadata.

A PrimeSet answers, for any prime q, whether q belongs to the set, and knows
whether sum(1/p) over its members converges ('yes' / 'no' / 'unknown'); that
flag decides whether the mean value of the attached +-1 function is the Euler
product or zero. Constructors cover finite lists, residue classes, quadratic
non-residue classes, tails [k, oo), the cube-gap set (least prime above each
cube n^3, n >= 2), and complements.

The textual grammar understood by ``parse_prime_set``:

    all | none | finite:2,3,5 | tail:100 | residues:8:3,5 | nonres:7
        | cubegap | complement:(<inner>)
"""

from __future__ import annotations

import bisect
import math
from functools import lru_cache

import numpy as np

from . import arith
from .errors import ValidationError


class PrimeSet:
    """Base class; membership is only meaningful on prime arguments."""

    kind = "abstract"

    def contains(self, q: int) -> bool:
        raise NotImplementedError

    def contains_batch(self, arr: np.ndarray) -> np.ndarray:
        """Vectorized membership for an array of primes (entries equal to 1 map to False)."""
        return np.fromiter(
            (v > 1 and self.contains(int(v)) for v in arr), dtype=bool, count=len(arr)
        )

    @property
    def reciprocal_sum_converges(self) -> str:
        raise NotImplementedError

    @property
    def complement_reciprocal_sum_converges(self) -> str:
        # the full reciprocal sum over all primes diverges, so a convergent
        # set always has a divergent complement
        if self.reciprocal_sum_converges == "yes":
            return "no"
        return "unknown"

    def finite_elements(self):
        """All elements as a sorted list when the set is provably finite, else None."""
        return None

    def complement_finite_elements(self):
        return None

    @property
    def label(self) -> str:
        raise NotImplementedError

    def first_prime(self, search_limit: int = 10_000_000):
        """Smallest member, or None if none is found below the search limit."""
        elems = self.finite_elements()
        if elems is not None:
            return elems[0] if elems else None
        q = 2
        while q <= search_limit:
            if self.contains(q):
                return q
            q = arith.next_prime(q)
        return None

    def primes_up_to(self, x: int) -> np.ndarray:
        """Members of the set not exceeding x, ascending."""
        arr = arith.primes_up_to(x)
        if len(arr) == 0:
            return arr
        return arr[self.contains_batch(arr)]

    def __repr__(self):
        return f"PrimeSet({self.label})"


class EmptySet(PrimeSet):
    kind = "empty"

    def contains(self, q):
        return False

    def contains_batch(self, arr):
        return np.zeros(len(arr), dtype=bool)

    reciprocal_sum_converges = "yes"
    complement_reciprocal_sum_converges = "no"

    def finite_elements(self):
        return []

    @property
    def label(self):
        return "none"


class AllPrimesSet(PrimeSet):
    kind = "all"

    def contains(self, q):
        return q > 1

    def contains_batch(self, arr):
        return arr > 1

    reciprocal_sum_converges = "no"
    complement_reciprocal_sum_converges = "yes"

    def complement_finite_elements(self):
        return []

    @property
    def label(self):
        return "all"


class FiniteSet(PrimeSet):
    kind = "finite"

    def __init__(self, primes):
        ps = sorted(set(int(p) for p in primes))
        for p in ps:
            if not arith.is_prime(p):
                raise ValidationError(f"finite prime set contains a non-prime entry: {p}")
        self.primes = ps
        self._arr = np.asarray(ps, dtype=np.int64)

    def contains(self, q):
        return q in set(self.primes) if len(self.primes) > 8 else q in self.primes

    def contains_batch(self, arr):
        return np.isin(arr, self._arr)

    reciprocal_sum_converges = "yes"
    complement_reciprocal_sum_converges = "no"

    def finite_elements(self):
        return list(self.primes)

    @property
    def label(self):
        return "finite:" + ",".join(str(p) for p in self.primes)


class TailSet(PrimeSet):
    """All primes >= k."""

    kind = "tail"

    def __init__(self, k: int):
        k = int(k)
        if k < 2:
            raise ValidationError(f"tail bound must be at least 2, got {k}")
        self.k = k

    def contains(self, q):
        return q >= self.k

    def contains_batch(self, arr):
        return arr >= self.k

    reciprocal_sum_converges = "no"
    complement_reciprocal_sum_converges = "yes"

    def complement_finite_elements(self):
        return [int(p) for p in arith.primes_up_to(self.k - 1)]

    @property
    def label(self):
        return f"tail:{self.k}"


class ResidueClassSet(PrimeSet):
    """Primes lying in a fixed set of residue classes modulo m."""

    kind = "residues"

    def __init__(self, modulus: int, residues):
        modulus = int(modulus)
        if modulus < 2:
            raise ValidationError(f"modulus must be at least 2, got {modulus}")
        rs = sorted(set(int(r) for r in residues))
        if not rs:
            raise ValidationError("residue class set must be nonempty")
        for r in rs:
            if not 0 <= r < modulus:
                raise ValidationError(
                    f"residue {r} is not reduced modulo {modulus}"
                )
        self.modulus = modulus
        self.residues = rs
        self._rset = frozenset(rs)
        self._rarr = np.asarray(rs, dtype=np.int64)

    def contains(self, q):
        return q % self.modulus in self._rset

    def contains_batch(self, arr):
        return np.isin(arr % self.modulus, self._rarr)

    @property
    def _has_coprime_class(self):
        return any(math.gcd(r, self.modulus) == 1 for r in self.residues)

    @property
    def reciprocal_sum_converges(self):
        # a class coprime to the modulus carries infinitely many primes with
        # divergent reciprocal sum; otherwise only divisors of m can occur
        return "no" if self._has_coprime_class else "yes"

    @property
    def complement_reciprocal_sum_converges(self):
        missing_coprime = any(
            math.gcd(r, self.modulus) == 1 and r not in self._rset
            for r in range(self.modulus)
        )
        return "no" if missing_coprime else "yes"

    def _divisor_primes(self):
        return [p for p, _ in arith.factorize(self.modulus).factors]

    def finite_elements(self):
        if self.reciprocal_sum_converges != "yes":
            return None
        return sorted(p for p in self._divisor_primes() if p % self.modulus in self._rset)

    def complement_finite_elements(self):
        if self.complement_reciprocal_sum_converges != "yes":
            return None
        return sorted(
            p for p in self._divisor_primes() if p % self.modulus not in self._rset
        )

    @property
    def label(self):
        return f"residues:{self.modulus}:" + ",".join(str(r) for r in self.residues)


class NonResidueSet(PrimeSet):
    """Primes q that are quadratic non-residues modulo a fixed odd prime p."""

    kind = "nonres"

    def __init__(self, p: int):
        try:
            self.p = arith._require_odd_prime(p)
        except Exception as exc:
            raise ValidationError(str(exc)) from None
        self._table = arith.legendre_value_table(self.p)

    def contains(self, q):
        return self._table[q % self.p] == -1

    def contains_batch(self, arr):
        return self._table[arr % self.p] == -1

    reciprocal_sum_converges = "no"
    # the complement contains every quadratic-residue prime, an infinite
    # family with divergent reciprocal sum
    complement_reciprocal_sum_converges = "no"

    @property
    def label(self):
        return f"nonres:{self.p}"


class CubeGapSet(PrimeSet):
    """The least prime above each cube n^3 for n >= 2: {11, 29, 67, 127, ...}.

    Since (p_n - 1)/(p_n + 1) > (n^3 - 1)/(n^3 + 1), the reciprocal sum
    converges and the Euler product admits exact rational tail bounds.
    """

    kind = "cubegap"

    _elems: list[int] = []
    _next_n: int = 2

    @classmethod
    def _append_next(cls):
        n = cls._next_n
        p = arith.next_prime(n**3)
        if cls._elems and p <= cls._elems[-1]:
            raise AssertionError("cube-gap enumeration must be strictly increasing")
        cls._elems.append(p)
        cls._next_n = n + 1

    @classmethod
    def _extend_to(cls, x: int):
        while not cls._elems or cls._elems[-1] <= x:
            cls._append_next()

    def elements_up_to(self, x: int) -> list[int]:
        self._extend_to(x)
        cut = bisect.bisect_right(self._elems, x)
        return self._elems[:cut]

    def first_elements(self, count: int) -> list[int]:
        while len(self._elems) < count:
            self._append_next()
        return self._elems[:count]

    def contains(self, q):
        self._extend_to(q)
        i = bisect.bisect_left(self._elems, q)
        return i < len(self._elems) and self._elems[i] == q

    def contains_batch(self, arr):
        if len(arr) == 0:
            return np.zeros(0, dtype=bool)
        self._extend_to(int(arr.max()))
        return np.isin(arr, np.asarray(self._elems, dtype=np.int64))

    reciprocal_sum_converges = "yes"
    complement_reciprocal_sum_converges = "no"

    def first_prime(self, search_limit=10_000_000):
        return self.first_elements(1)[0]

    def primes_up_to(self, x):
        return np.asarray(self.elements_up_to(x), dtype=np.int64)

    @property
    def label(self):
        return "cubegap"


class ComplementSet(PrimeSet):
    """All primes not in the inner set."""

    kind = "complement"

    def __init__(self, inner: PrimeSet):
        self.inner = inner

    def contains(self, q):
        return q > 1 and not self.inner.contains(q)

    def contains_batch(self, arr):
        res = ~self.inner.contains_batch(arr)
        res &= arr > 1
        return res

    @property
    def reciprocal_sum_converges(self):
        return self.inner.complement_reciprocal_sum_converges

    @property
    def complement_reciprocal_sum_converges(self):
        return self.inner.reciprocal_sum_converges

    def finite_elements(self):
        return self.inner.complement_finite_elements()

    def complement_finite_elements(self):
        return self.inner.finite_elements()

    @property
    def label(self):
        return f"complement:({self.inner.label})"


def parse_prime_set(text: str) -> PrimeSet:
    """Build a PrimeSet from its textual constructor description."""
    if not isinstance(text, str):
        raise ValidationError(f"prime set description must be a string, got {text!r}")
    t = text.strip()
    low = t.lower()
    try:
        if low == "all":
            return AllPrimesSet()
        if low == "none":
            return EmptySet()
        if low == "cubegap":
            return CubeGapSet()
        if low.startswith("finite:"):
            items = [s for s in t[len("finite:") :].split(",") if s.strip()]
            if not items:
                raise ValidationError("finite prime set needs at least one entry")
            return FiniteSet(int(s) for s in items)
        if low.startswith("tail:"):
            return TailSet(int(t[len("tail:") :]))
        if low.startswith("residues:"):
            parts = t.split(":")
            if len(parts) != 3:
                raise ValidationError(
                    "residue sets are written residues:<modulus>:<r1,r2,...>"
                )
            rs = [s for s in parts[2].split(",") if s.strip()]
            if not rs:
                raise ValidationError("residue class set must be nonempty")
            return ResidueClassSet(int(parts[1]), (int(s) for s in rs))
        if low.startswith("nonres:"):
            return NonResidueSet(int(t[len("nonres:") :]))
        if low.startswith("complement:(") and t.endswith(")"):
            return ComplementSet(parse_prime_set(t[len("complement:(") : -1]))
    except ValidationError:
        raise
    except ValueError as exc:
        raise ValidationError(f"bad prime set description {text!r}: {exc}") from None
    raise ValidationError(f"unrecognized prime set description: {text!r}")


@lru_cache(maxsize=None)
def _cached_parse(text: str) -> PrimeSet:
    return parse_prime_set(text)


def make_prime_set(spec) -> PrimeSet:
    """Accept a PrimeSet instance or a grammar string."""
    if isinstance(spec, PrimeSet):
        return spec
    return parse_prime_set(spec)

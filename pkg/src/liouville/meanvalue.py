"""Mean values of +-1 completely multiplicative functions over prime sets.

The mean value of lambda_A is prod_{p in A} (p-1)/(p+1) when sum_{p in A} 1/p
converges and 0 otherwise (Wintner's criterion). This module computes that
value exactly for enumerable convergent sets, brackets it with certified
rational bounds for the cube-gap set, realizes arbitrary targets in (0,1) by
the minimal greedy choice of primes, estimates the density parameter kappa
from prime log-weighted sums, evaluates the Wirsing constant c_kappa, and
searches the totient/divisor-sum ratio over square-free integers.

Products of (p-1)/(p+1) are kept as exact Fractions throughout; floats only
appear in kappa fits, gamma factors, and final point estimates, so minimality
decisions are never corrupted by rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import arith
from .config import budgets
from .errors import DomainError, ResourceLimitError, UndecidableError, ValidationError
from .genliouville import summatory
from .primesets import CubeGapSet, make_prime_set


def _to_fraction(value, name: str = "value") -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, (str, float)):
        try:
            return Fraction(str(value).strip()) if isinstance(value, str) else Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"bad {name}: {value!r} ({exc})") from None
    raise DomainError(f"bad {name}: {value!r}")


def _edge_ratio(p: int) -> Fraction:
    return Fraction(p - 1, p + 1)


@dataclass(frozen=True)
class MeanValueBracket:
    """Certified bracket lower <= mean value <= upper, with a float point estimate.

    provenance is 'exact-finite' (lower == upper, exact rational),
    'tail-bounded' (enumerated partial product with an analytic tail
    minorant), or 'divergence-zero' (divergent reciprocal sum forces 0).
    """

    lower: Fraction
    upper: Fraction
    point: float
    provenance: str

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower


def mean_value(pset, truncation: int = 50) -> MeanValueBracket:
    """Mean value of lambda_A as a certified bracket."""
    pset = make_prime_set(pset)
    truncation = arith.as_natural(truncation, "truncation")
    if truncation < 2:
        raise DomainError("truncation must be at least 2")
    conv = pset.reciprocal_sum_converges
    if conv == "no":
        zero = Fraction(0)
        return MeanValueBracket(zero, zero, 0.0, "divergence-zero")
    if conv == "unknown":
        raise UndecidableError(
            f"mean value of {pset.label} is not decided here: "
            "reciprocal-sum convergence is unknown for this constructor"
        )
    elems = pset.finite_elements()
    if elems is not None:
        v = math.prod((_edge_ratio(p) for p in elems), start=Fraction(1))
        return MeanValueBracket(v, v, float(v), "exact-finite")
    if isinstance(pset, CubeGapSet):
        elems = pset.first_elements(truncation)
        upper = math.prod((_edge_ratio(p) for p in elems), start=Fraction(1))
        # elements correspond to cubes n = 2..m; the discarded factors are
        # each above (n^3-1)/(n^3+1), whose product from m+1 on telescopes
        # to m(m+1)/(m^2+m+1)
        m = truncation + 1
        tail = Fraction(m * (m + 1), m * m + m + 1)
        lower = upper * tail
        return MeanValueBracket(lower, upper, float((lower + upper) / 2), "tail-bounded")
    raise UndecidableError(
        f"mean value of {pset.label}: convergent but no enumeration with tail bounds is available"
    )


@dataclass(frozen=True)
class GreedyConstruction:
    """Primes chosen minimally so every partial product of (q-1)/(q+1) stays above alpha."""

    alpha: Fraction
    primes: tuple[int, ...]
    partials: tuple[Fraction, ...]
    width: Fraction

    def verify_minimality(self) -> bool:
        """Re-check that no smaller admissible prime could replace any choice.

        (q-1)/(q+1) is increasing in q, so it suffices that the largest prime
        strictly between consecutive choices already drives the product to
        alpha or below.
        """
        partial = Fraction(1)
        prev = 1
        for q, after in zip(self.primes, self.partials):
            if after != partial * _edge_ratio(q) or after <= self.alpha:
                return False
            cand = arith.prev_prime(q - 1)
            if cand is not None and cand > prev:
                if partial * _edge_ratio(cand) > self.alpha:
                    return False
            partial = after
            prev = q
        return True


def greedy_construct(alpha, *, max_primes: int | None = 64, width=Fraction(1, 10**6)) -> GreedyConstruction:
    """Greedy realization of a mean-value target alpha in (0,1).

    At each step the least prime q above the previous one keeping the partial
    product strictly above alpha is appended; the construction stops once the
    gap to alpha is at most ``width`` or ``max_primes`` primes were chosen,
    whichever comes first.
    """
    a = _to_fraction(alpha, "alpha")
    if not 0 < a < 1:
        raise DomainError(
            "alpha must lie strictly between 0 and 1; the endpoints are realized "
            "by the empty set and by all primes"
        )
    if max_primes is None and width is None:
        raise ValidationError("greedy construction needs a stop criterion")
    if max_primes is not None and max_primes < 1:
        raise ValidationError("max_primes must be positive")
    w = None if width is None else _to_fraction(width, "width")
    if w is not None and w <= 0:
        raise ValidationError("width must be positive")
    primes: list[int] = []
    partials: list[Fraction] = []
    partial = Fraction(1)
    prev = 1
    while True:
        if max_primes is not None and len(primes) >= max_primes:
            break
        if w is not None and partial - a <= w:
            break
        t = a / partial
        bound = (1 + t) / (1 - t)
        # least prime q with (q-1)/(q+1) * partial > alpha, i.e. q > bound
        start = max(prev + 1, bound.numerator // bound.denominator + 1)
        if start > budgets().greedy_prime_limit:
            # the gap to alpha closes quadratically, so required primes grow
            # doubly exponentially; past this point the stop criteria were
            # badly chosen (use a width stop instead of a deep prime count)
            raise ResourceLimitError(
                f"greedy step needs a prime beyond {budgets().greedy_prime_limit}; "
                f"current gap to alpha is {float(partial - a):.3e}"
            )
        q = arith.next_prime(start - 1)
        partial *= _edge_ratio(q)
        primes.append(q)
        partials.append(partial)
        prev = q
    return GreedyConstruction(a, tuple(primes), tuple(partials), partial - a)


@dataclass(frozen=True)
class DensityEstimate:
    """Least-squares estimate of the density parameter kappa.

    kappa is defined through sum_{p<=x, p in A} log p / p =
    ((1-kappa)/2) log x + O(1); the estimate is 1 - 2*slope, clamped to
    [-1, 1]. ``degenerate`` is set when fewer than three checkpoints contain
    primes of the set, in which case the slope rests on little data (an empty
    set legitimately fits slope 0, i.e. kappa 1).
    """

    kappa_hat: float
    samples: tuple[tuple[int, float], ...]
    residual: float
    degenerate: bool


def kappa_estimate(pset, x, checkpoints: int = 8) -> DensityEstimate:
    """Fit the prime log-weighted partial sums against log t at geometric checkpoints.

    Checkpoints run geometrically from sqrt(x) to x: below sqrt(x) the O(1)
    term of the partial sums is still drifting and would bias the slope.
    """
    pset = make_prime_set(pset)
    x = arith.as_natural(x, "x")
    if x < 100:
        raise DomainError("kappa estimation needs x >= 100")
    if x > budgets().sieve_limit:
        raise ResourceLimitError("x exceeds the sieve budget")
    if checkpoints < 3:
        raise DomainError("at least 3 checkpoints are required")
    exps = [0.5 + 0.5 * j / (checkpoints - 1) for j in range(checkpoints)]
    ts = sorted({max(2, int(round(x**e))) for e in exps})
    members = pset.primes_up_to(x)
    if len(members):
        w = np.cumsum(np.log(members.astype(np.float64)) / members)
        idx = np.searchsorted(members, ts, side="right")
        sums = [float(w[i - 1]) if i > 0 else 0.0 for i in idx]
        populated = int(np.count_nonzero(idx))
    else:
        sums = [0.0] * len(ts)
        populated = 0
    logt = np.log(np.asarray(ts, dtype=np.float64))
    svec = np.asarray(sums, dtype=np.float64)
    if np.allclose(svec, 0.0):
        slope, intercept = 0.0, 0.0
    else:
        slope, intercept = np.polyfit(logt, svec, 1)
    fitted = slope * logt + intercept
    residual = float(np.sqrt(np.mean((svec - fitted) ** 2)))
    kappa = min(1.0, max(-1.0, 1.0 - 2.0 * float(slope)))
    return DensityEstimate(
        kappa_hat=kappa,
        samples=tuple(zip(ts, sums)),
        residual=residual,
        degenerate=populated < 3,
    )


def wirsing_constant(kappa: float, pset, truncation: int = 1_000_000) -> float:
    """Truncated c_kappa = (1/Gamma(kappa+1)) prod_p (1-1/p)^kappa (1-lambda_A(p)/p)^-1.

    For kappa = 1 every factor off the set telescopes to 1, so the value is
    the exact finite product of (p-1)/(p+1) over set primes <= truncation
    (computed in rationals, hence independent of the truncation once it
    covers a finite set).
    """
    pset = make_prime_set(pset)
    kappa = float(kappa)
    if not 0 < kappa <= 1:
        raise DomainError("kappa must lie in (0, 1]; other regimes carry no product constant")
    truncation = arith.as_natural(truncation, "truncation")
    if truncation < 2:
        raise DomainError("truncation must be at least 2")
    if truncation > budgets().sieve_limit:
        raise ResourceLimitError("truncation exceeds the sieve budget")
    if kappa == 1.0:
        elems = pset.finite_elements()
        members = (
            [p for p in elems if p <= truncation]
            if elems is not None
            else [int(p) for p in pset.primes_up_to(truncation)]
        )
        v = math.prod((_edge_ratio(p) for p in members), start=Fraction(1))
        return float(v)
    primes = arith.primes_up_to(truncation)
    pf = primes.astype(np.float64)
    sign = np.where(pset.contains_batch(primes), -1.0, 1.0)
    logs = kappa * np.log1p(-1.0 / pf) - np.log1p(-sign / pf)
    return math.exp(math.fsum(logs.tolist())) / math.gamma(kappa + 1)


@dataclass(frozen=True)
class PhiSigmaSearch:
    """Outcome of searching phi(z)/sigma(z) = q over square-free z <= bound."""

    target: Fraction
    search_bound: int
    found: int | None
    closest: tuple[tuple[int, Fraction], ...]
    nodes: int


def phi_sigma_target(q, search_bound) -> PhiSigmaSearch:
    """Least square-free z <= search_bound with phi(z)/sigma(z) = q, if any.

    Square-free z correspond to finite prime sets, and phi(z)/sigma(z) is the
    product of (p-1)/(p+1) over the prime factors, so the search walks subsets
    of primes in ascending order and prunes as soon as the running product
    drops below the target (every further factor only decreases it).
    """
    q = _to_fraction(q, "q")
    if not 0 < q < 1:
        raise DomainError("q must lie strictly between 0 and 1")
    bound = arith.as_natural(search_bound, "search_bound")
    if bound < 2:
        raise DomainError("search_bound must be at least 2")
    primes = [int(p) for p in arith.primes_up_to(bound)]
    ratios = [_edge_ratio(p) for p in primes]
    best: int | None = None
    closest: list[tuple[Fraction, int, Fraction]] = []
    nodes = 0

    def record(z: int, r: Fraction):
        gap = abs(r - q)
        closest.append((gap, z, r))
        closest.sort()
        del closest[5:]

    def dfs(start: int, ratio: Fraction, z: int):
        nonlocal best, nodes
        for i in range(start, len(primes)):
            p = primes[i]
            nz = z * p
            if nz > bound:
                break
            nodes += 1
            nr = ratio * ratios[i]
            if nr == q:
                best = nz if best is None else min(best, nz)
            elif nr > q:
                record(nz, nr)
                dfs(i + 1, nr, nz)
            else:
                record(nz, nr)

    dfs(0, Fraction(1), 1)
    return PhiSigmaSearch(
        target=q,
        search_bound=bound,
        found=best,
        closest=tuple((z, r) for _, z, r in closest),
        nodes=nodes,
    )


def limit_sequence(alpha, k) -> list[tuple[int, Fraction]]:
    """Square-free integers n_j (products of the first j greedy primes) whose
    totient/divisor-sum ratios walk down to alpha from above."""
    k = arith.as_natural(k, "k")
    if k < 1:
        raise DomainError("k must be at least 1")
    g = greedy_construct(alpha, max_primes=k, width=None)
    out = []
    z = 1
    for q, part in zip(g.primes, g.partials):
        z *= q
        out.append((z, part))
    return out


def empirical_mean(pset, x) -> float:
    """L_A(x)/x by direct sieve; a slow-convergence diagnostic for brackets."""
    x = arith.as_natural(x, "x")
    if x < 1:
        raise DomainError("x must be at least 1")
    return summatory(x, pset).value / x

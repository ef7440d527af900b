"""The twin-sieve density series and the twin prime constant.

The sieve upper bound downstream needs two Euler products.

The first is H(s) = sum_n |g(n)| n^(-s), evaluated at a negative rational
s = -alpha with 0 < alpha < 1/2.  Here g is the multiplicative density
multiplier of the twin sieve, supported on cube-free numbers:

    g(2) = 0       g(4) = -3/4               g(8) = 1/4
    g(p) = 4/(p(p-2))   g(p^2) = -(3p+2)/(p^2(p-2))   g(p^3) = 2/(p^2(p-2))

for odd primes p, and g(p^k) = 0 for k >= 4.  H factors over primes, so
log H = sum_p log(1 + |g(p)| p^alpha + |g(p^2)| p^(2 alpha) +
|g(p^3)| p^(3 alpha)).  The sum over p <= cutoff is evaluated directly
(vectorized, with a blanket relative pad over the float pipeline); the
tail over p > cutoff is bounded through partial summation against an
explicit Chebyshev-type bound on the prime counting function, which
turns it into a first term at the cutoff plus an exponential integral.

The second product is the twin prime constant
C = 2 prod_{p > 2} (1 - 1/(p-1)^2), enclosed the same way: certified
partial product, then a rigorous tail estimate.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .interval import Interval, ei_neg, rational_pow
from .sieve import _base_prime_array, _odd_mask, _segment_bounds, prime_count

__all__ = [
    "GFactor",
    "HBoundReport",
    "g_factor_log",
    "g_value",
    "h_bound",
    "twin_constant",
]

_NINF = float("-inf")
_PINF = float("inf")

#: Chebyshev-type upper bound pi(t) <= (1 + 1.2762/log t) t/log t holds
#: from here on; tail estimates refuse smaller cutoffs.
_PI_BOUND_FLOOR = 599

_S1_SEGMENT = 1 << 24

# blanket relative pad for the vectorized log-sum pipelines: the worst
# element tallies about 36 units of 2^-53 (power evaluation with a
# rounded rational exponent dominates), padded to 64
_VEC_PAD = 7.2e-15


@dataclass(frozen=True)
class GFactor:
    """Exact values of g at p, p^2, p^3 for one prime."""

    prime: int
    values: tuple

    @classmethod
    def at(cls, p: int) -> "GFactor":
        if p == 2:
            return cls(2, (Fraction(0), Fraction(-3, 4), Fraction(1, 4)))
        if p < 2 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
            raise ValueError(f"not a prime: {p}")
        d = p * (p - 2)
        return cls(
            p,
            (
                Fraction(4, d),
                Fraction(-(3 * p + 2), p * d),
                Fraction(2, p * d),
            ),
        )

    def value(self, exponent: int) -> Fraction:
        if exponent < 1:
            raise ValueError(f"exponent must be >= 1: {exponent}")
        if exponent > 3:
            return Fraction(0)
        return self.values[exponent - 1]


def g_value(n: int) -> Fraction:
    """g(n) for any n >= 1, by multiplicativity over the factorization."""
    if n < 1:
        raise ValueError(f"g is defined on positive integers: {n}")
    result = Fraction(1)
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            if k > 3:
                return Fraction(0)
            result *= GFactor.at(p).value(k)
            if result == 0:
                return result
        p += 1 if p == 2 else 2
    if m > 1:
        result *= GFactor.at(m).value(1)
    return result


def g_factor_log(p: int, s: Fraction) -> Interval:
    """log of the local H factor at p: log(1 + sum_k |g(p^k)| p^(-k s)).

    ``s`` must be a negative rational with -1/2 < s < 0.
    """
    s = Fraction(s)
    if not Fraction(-1, 2) < s < 0:
        raise ValueError(f"s out of range (-1/2, 0): {s}")
    gf = GFactor.at(p)
    base = Interval.from_int(p)
    total = Interval(0.0, 0.0)
    for k in (1, 2, 3):
        coeff = abs(gf.value(k))
        if coeff == 0:
            continue
        e = -k * s
        power = rational_pow(base, e.numerator, e.denominator)
        total = total + Interval.from_fraction(coeff) * power
    return total.log1p()


def _vdn(a):
    return np.nextafter(a, _NINF)


def _vup(a):
    return np.nextafter(a, _PINF)


def _padded_block_sum(y: np.ndarray) -> Interval:
    """Interval for sum(y) given a per-element relative pad, one fsum."""
    y_lo = _vdn(np.abs(y) * (1.0 - _VEC_PAD)) * np.sign(y)
    y_hi = _vup(np.abs(y) * (1.0 + _VEC_PAD)) * np.sign(y)
    lows = np.minimum(y_lo, y_hi)
    highs = np.maximum(y_lo, y_hi)
    lo = math.nextafter(math.fsum(lows.tolist()), _NINF)
    hi = math.nextafter(math.fsum(highs.tolist()), _PINF)
    return Interval(lo, hi)


def _segment_odd_primes(a: int, b: int, base_primes: np.ndarray) -> np.ndarray:
    lo = a if a % 2 == 1 else a + 1
    if lo < 3:
        lo = 3
    if lo > b:
        return np.empty(0, dtype=np.float64)
    mask = _odd_mask(lo, b, base_primes)
    return (lo + 2 * np.nonzero(mask)[0]).astype(np.float64)


def _h_local_log_terms(pf: np.ndarray, alpha: Fraction) -> np.ndarray:
    # numerator 4 p^(1+a) + 3 p^(1+2a) + 2 p^(2a) + 2 p^(3a) over p^2 (p-2);
    # exponents rounded once from exact rationals
    e1 = float(1 + alpha)
    e2 = float(1 + 2 * alpha)
    e3 = float(2 * alpha)
    e4 = float(3 * alpha)
    num = (
        4.0 * np.power(pf, e1)
        + 3.0 * np.power(pf, e2)
        + 2.0 * np.power(pf, e3)
        + 2.0 * np.power(pf, e4)
    )
    return np.log1p(num / (pf * pf * (pf - 2.0)))


def _partial_log_sum(cutoff: int, alpha: Fraction, threads: int = 1) -> Interval:
    """sum over primes p <= cutoff of the local H factor log, p = 2 included."""
    total = g_factor_log(2, -alpha)
    if cutoff < 3:
        return total
    base_primes = _base_prime_array(math.isqrt(cutoff) + 1)

    def work(bounds):
        pf = _segment_odd_primes(bounds[0], bounds[1], base_primes)
        if len(pf) == 0:
            return Interval(0.0, 0.0)
        return _padded_block_sum(_h_local_log_terms(pf, alpha))

    bounds = list(_segment_bounds(cutoff, _S1_SEGMENT))
    if threads == 1:
        parts = map(work, bounds)
    else:
        pool = ThreadPoolExecutor(max_workers=threads)
        parts = pool.map(work, bounds)
    try:
        for part in parts:
            total = total + part
    finally:
        if threads > 1:
            pool.shutdown()
    return total


def _chebyshev_k2(cutoff_iv: Interval) -> Interval:
    return Interval.from_fraction(Fraction("1.2762")) / cutoff_iv.log() + 1


@dataclass(frozen=True)
class HBoundReport:
    """Certified enclosure of H(-alpha) from a finite prime cutoff."""

    cutoff: int
    alpha: Fraction
    pi_cutoff: int
    partial_log_sum: Interval
    tail_first_term: Interval
    tail_integral_term: Interval
    log_bound: Interval
    h: Interval
    k1: Interval
    k2: Interval


def _tail_envelope_coefficient(t: Interval, alpha: Fraction) -> Interval:
    """r(t) = (4 t^(1-a) + 3 t + 2 + 2 t^a) / (t - 2).

    The local H sum at a prime p equals r(p) p^(-beta) with
    beta = 2 - 2 alpha, and r decreases on t > 2, so r(cutoff) caps every
    tail factor.
    """
    one_minus = 1 - alpha
    return (
        4 * rational_pow(t, one_minus.numerator, one_minus.denominator)
        + 3 * t
        + 2
        + 2 * rational_pow(t, alpha.numerator, alpha.denominator)
    ) / (t - 2)


def h_bound(cutoff: int, alpha: Fraction, threads: int = 1) -> HBoundReport:
    """Enclose H(-alpha) using primes up to ``cutoff``.

    The lower end is the partial product alone (every tail factor
    exceeds 1); the upper end adds the tail bound.  Requires
    cutoff >= 599 so the Chebyshev-type bound on pi is available, and
    0 < alpha < 1/2 so the tail series converges with room.
    """
    alpha = Fraction(alpha)
    if not 0 < alpha < Fraction(1, 2):
        raise ValueError(f"alpha out of range (0, 1/2): {alpha}")
    if cutoff < _PI_BOUND_FLOOR:
        raise ValueError(f"cutoff below {_PI_BOUND_FLOOR}: {cutoff}")

    beta = 2 - 2 * alpha  # tail factors decay like t^(-beta)
    s1 = _partial_log_sum(cutoff, alpha, threads=threads)
    pi_cutoff = prime_count(cutoff, threads=threads)

    t0 = Interval.from_int(cutoff)
    k1 = _tail_envelope_coefficient(t0, alpha) * 1.000001
    _check_tail_domination(cutoff, alpha, k1)
    k2 = _chebyshev_k2(t0)

    p_beta = rational_pow(t0, -beta.numerator, beta.denominator)
    first = -((k1 * p_beta).log1p() * pi_cutoff)
    z = Interval.from_fraction(beta - 1) * t0.log()
    integral = Interval.from_fraction(beta) * k1 * k2 * -ei_neg(-z)

    log_hi = (s1 + first + integral).hi
    log_bound = Interval(s1.lo, log_hi)
    return HBoundReport(
        cutoff=cutoff,
        alpha=alpha,
        pi_cutoff=pi_cutoff,
        partial_log_sum=s1,
        tail_first_term=first,
        tail_integral_term=integral,
        log_bound=log_bound,
        h=log_bound.exp(),
        k1=k1,
        k2=k2,
    )


def _check_tail_domination(cutoff: int, alpha: Fraction, k1: Interval) -> None:
    # r is provably decreasing (its derivative numerator is
    # -(4 t^(1-a) + 8 + 2 t^a) minus positive terms), but cheap to
    # double-check on a geometric grid before trusting k1
    t = float(cutoff)
    for _ in range(48):
        r = _tail_envelope_coefficient(Interval.point(t), alpha)
        if r.hi > k1.lo:
            raise ArithmeticError(
                f"tail envelope not dominated at t={t!r}; k1 too small"
            )
        t *= 1.7
        if t > 1e300:
            break


def twin_constant(cutoff: int, threads: int = 1) -> Interval:
    """Enclosure of the twin prime constant 2 prod_{p>2} (1 - 1/(p-1)^2).

    The partial product over p <= cutoff is an upper bound already; the
    lower end divides off a certified tail.  For cutoff >= 601 the tail
    uses partial summation against the Chebyshev-type pi bound; smaller
    cutoffs fall back to the crude integral tail 2/(cutoff - 1).
    """
    if cutoff < 3:
        raise ValueError(f"cutoff must be >= 3: {cutoff}")
    base_primes = _base_prime_array(math.isqrt(cutoff) + 1)
    log_sum = Interval(0.0, 0.0)
    for a, b in _segment_bounds(cutoff, _S1_SEGMENT):
        pf = _segment_odd_primes(a, b, base_primes)
        if len(pf) == 0:
            continue
        q = pf - 1.0
        log_sum = log_sum + _padded_block_sum(np.log1p(-1.0 / (q * q)))
    partial = 2 * log_sum.exp()

    t0 = Interval.from_int(cutoff)
    if cutoff >= _PI_BOUND_FLOOR + 2:
        # sum_{p > cutoff} -log(1 - x_p) <= sum x_p + x_p^2 with
        # x_p = 1/(p-1)^2, then partial summation: the integral
        # int_cutoff^inf f(t) dt = 1/(t0-1) + 1/(3 (t0-1)^3)
        pi_cutoff = prime_count(cutoff, threads=threads)
        q = t0 - 1
        f0 = 1 / (q * q) + 1 / (q * q * q * q)
        k2 = _chebyshev_k2(t0)
        integral = 1 / q + 1 / (3 * q * q * q)
        tail_hi = (-(f0 * pi_cutoff) + (k2 / t0.log()) * (t0 * f0 + integral)).hi
    else:
        tail_hi = (2 / (t0 - 1)).hi
    damp = Interval(-tail_hi, 0.0).exp()
    return Interval((partial * damp).lo, partial.hi)

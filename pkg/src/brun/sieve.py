"""Segmented twin prime sieve with a certified running sum.

The sieve itself is a plain segmented Eratosthenes over odd numbers,
vectorized with numpy byte masks.  What makes it worth a module is the
accumulation contract: the partial sum of 1/p + 1/(p+2) over twin pairs is
carried as a pair of directed-rounding floats, added term by term in
ascending prime order.  Because the chain never depends on where segment
boundaries fall, the same limit produces bit-identical enclosure endpoints
for every segment size and thread count.

A twin pair (p, p+2) is counted at its lower member: pi2(x) counts pairs
with p <= x, and the running sum includes both reciprocals of such pairs
even when p + 2 > x.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .interval import Interval

__all__ = ["TwinCensus", "census", "prime_count", "twin_lower_members"]

DEFAULT_SEGMENT_SIZE = 1 << 22

_NINF = float("-inf")
_PINF = float("inf")


@dataclass(frozen=True)
class TwinCensus:
    """Exact twin pair count up to ``limit`` plus the certified partial sum."""

    limit: int
    pi2: int
    brun_partial: Interval


def _base_prime_array(limit: int) -> np.ndarray:
    """All primes <= limit by a dense sieve; limit stays around sqrt(x)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.nonzero(mask)[0].astype(np.int64)


def _odd_mask(lo: int, hi: int, base_primes: np.ndarray) -> np.ndarray:
    """Primality mask for the odd numbers of [lo, hi], lo odd, lo >= 3."""
    size = (hi - lo) // 2 + 1
    mask = np.ones(size, dtype=bool)
    for p in base_primes:
        p = int(p)
        if p == 2:
            continue
        if p * p > hi:
            break
        start = ((lo + p - 1) // p) * p
        if start < p * p:
            start = p * p
        if start % 2 == 0:
            start += p
        if start > hi:
            continue
        mask[(start - lo) // 2 :: p] = False
    return mask


def _segment_bounds(limit: int, segment_size: int):
    a = 3
    while a <= limit:
        b = min(a + segment_size - 1, limit)
        yield a, b
        a = b + 1


def _twin_terms(a: int, b: int, base_primes: np.ndarray):
    """Twin lower members in [a, b] with their directed per-term bounds.

    The segment is sieved up to b + 2 so a pair whose upper member pokes
    past the segment edge is still seen by the segment that owns p.
    Returns (count, lower-bound terms, upper-bound terms), terms ascending.
    """
    lo = a if a % 2 == 1 else a + 1
    if lo < 3:
        lo = 3
    if lo > b:
        empty = np.empty(0, dtype=np.float64)
        return 0, empty, empty
    mask = _odd_mask(lo, b + 2, base_primes)
    pair = mask[:-1] & mask[1:]
    idx = np.nonzero(pair)[0]
    p = lo + 2 * idx.astype(np.int64)
    p = p[p <= b]
    pf = p.astype(np.float64)
    inv_lo = np.nextafter(np.nextafter(1.0 / pf, _NINF) + np.nextafter(1.0 / (pf + 2.0), _NINF), _NINF)
    inv_hi = np.nextafter(np.nextafter(1.0 / pf, _PINF) + np.nextafter(1.0 / (pf + 2.0), _PINF), _PINF)
    return len(p), inv_lo, inv_hi


def census(
    limit: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> TwinCensus:
    """Count twin pairs up to ``limit`` and enclose their reciprocal sum.

    ``segment_size`` and ``threads`` are performance knobs only: every
    choice yields the same pi2 and bit-identical brun_partial endpoints.
    Workers sieve segments concurrently; the accumulation happens on this
    thread, strictly in ascending segment order, one term at a time.
    """
    if limit < 0:
        raise ValueError(f"negative limit: {limit}")
    if segment_size < 2:
        raise ValueError(f"segment_size too small: {segment_size}")
    if threads < 1:
        raise ValueError(f"threads must be >= 1: {threads}")

    base_primes = _base_prime_array(math.isqrt(limit + 2) + 1)
    pi2 = 0
    acc_lo = 0.0
    acc_hi = 0.0
    nextafter = math.nextafter

    def work(bounds):
        return _twin_terms(bounds[0], bounds[1], base_primes)

    bounds = list(_segment_bounds(limit, segment_size))
    if threads == 1:
        results = map(work, bounds)
    else:
        pool = ThreadPoolExecutor(max_workers=threads)
        results = pool.map(work, bounds)
    try:
        for count, inv_lo, inv_hi in results:
            pi2 += count
            for t in inv_lo.tolist():
                acc_lo = nextafter(acc_lo + t, _NINF)
            for t in inv_hi.tolist():
                acc_hi = nextafter(acc_hi + t, _PINF)
    finally:
        if threads > 1:
            pool.shutdown()

    return TwinCensus(limit=limit, pi2=pi2, brun_partial=Interval(acc_lo, acc_hi))


def twin_lower_members(limit: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> np.ndarray:
    """All p <= limit with p and p + 2 prime, ascending int64 array."""
    if limit < 3:
        return np.empty(0, dtype=np.int64)
    base_primes = _base_prime_array(math.isqrt(limit + 2) + 1)
    parts = []
    for a, b in _segment_bounds(limit, segment_size):
        lo = a if a % 2 == 1 else a + 1
        if lo > b:
            continue
        mask = _odd_mask(lo, b + 2, base_primes)
        pair = mask[:-1] & mask[1:]
        p = lo + 2 * np.nonzero(pair)[0].astype(np.int64)
        parts.append(p[p <= b])
    return np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)


def prime_count(
    limit: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> int:
    """pi(limit), exactly, by the same segmented machinery."""
    if limit < 2:
        return 0
    count = 1  # the prime 2
    base_primes = _base_prime_array(math.isqrt(limit) + 1)

    def work(bounds):
        a, b = bounds
        lo = a if a % 2 == 1 else a + 1
        if lo > b:
            return 0
        return int(np.count_nonzero(_odd_mask(lo, b, base_primes)))

    bounds = list(_segment_bounds(limit, segment_size))
    if threads == 1:
        results = map(work, bounds)
        return count + sum(results)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return count + sum(pool.map(work, bounds))

#!/usr/bin/env python3
"""How the certified product bound tightens with the prime cutoff.

The constant H bounds a product over all primes of terms that tend to 1.
Primes below a cutoff are multiplied explicitly in interval arithmetic;
the infinitely many primes above it contribute a certified tail built
from a first-order term and an exponential-integral remainder.  Raising
the cutoff trades sieve time for a smaller tail, so the upper end of the
enclosure can only move down.
"""

import time
from fractions import Fraction

from brun.euler_product import h_bound


def main():
    alpha = Fraction(2, 5)
    print(f"{'cutoff':>8}  {'H enclosure':>30}  {'tail first term':>16}  {'secs':>5}")
    for exponent in (5, 6, 7, 8):
        cutoff = 10**exponent
        started = time.monotonic()
        report = h_bound(cutoff, alpha)
        elapsed = time.monotonic() - started
        print(
            f"{cutoff:>8}  [{report.h.lo:14.7f}, {report.h.hi:12.7f}]"
            f"  {report.tail_first_term.lo:16.3e}  {elapsed:>5.1f}"
        )

    print()
    report = h_bound(10**8, alpha)
    print("breakdown at cutoff 1e8:")
    print(f"  log-sum over sieved primes  {report.partial_log_sum}")
    print(f"  tail first-order term       {report.tail_first_term}")
    print(f"  tail integral remainder     {report.tail_integral_term}")
    print(f"  H = exp(sum + tail)         {report.h}")


if __name__ == "__main__":
    main()

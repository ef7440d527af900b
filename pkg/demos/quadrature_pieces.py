#!/usr/bin/env python3
"""Adaptive quadrature work vs. requested certificate width.

The correction integral behind the upper bound runs from log(4e18) to
u = 20000 in log coordinates.  The adaptive integrator splits whichever
piece currently contributes the most width, so cost concentrates near
the left endpoint where the integrand still moves.  This prints the
piece count and achieved width for a range of targets, then shows the
second-order behaviour: halving a piece shrinks its width bracket by
roughly a factor of four.
"""

import math
import time

from brun.rv_bound import correction_piece, derive_params, integrate_adaptive


def main():
    params = derive_params()
    piece = correction_piece(params)
    u0 = math.log(4e18)

    print(f"{'target':>8}  {'pieces':>7}  {'achieved width':>14}  {'secs':>6}")
    for target in (1e-3, 1e-4, 1e-5, 2e-6, 1e-6):
        started = time.monotonic()
        result = integrate_adaptive(piece, u0, 20000.0, width_target=target)
        elapsed = time.monotonic() - started
        print(
            f"{target:>8.0e}  {result.pieces:>7}  "
            f"{result.achieved_width:>14.3e}  {elapsed:>6.2f}"
        )

    print()
    print("single-piece widths over [43, 43+h], h halving:")
    h = 2.0
    while h > 0.12:
        iv = piece(43.0, 43.0 + h)
        print(f"  h={h:>5.3f}  width={iv.width:.6e}")
        h /= 2.0
    print()
    print(
        "the floor near 7e-7 is irreducible: it comes from the widths of "
        "the constant enclosures inside the integrand, not from the mesh"
    )


if __name__ == "__main__":
    main()

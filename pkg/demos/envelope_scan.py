#!/usr/bin/env python3
# Scan the divisor-sum error envelope that feeds the sieve constants.
#
# For a tuning exponent alpha the quantity scanned is
#
#     |sum over d <= y of mu^2(d) 3^omega(d) / d - main term| / y^alpha
#
# evaluated with exact rational arithmetic at every integer y up to the
# scan limit, plus a certified bound for the continuous argument between
# integers.  The certified maximum is what enters the bound constants;
# the argmax says where the worst case lives (very small y, as the
# envelope decays like y^(1-alpha) afterwards).

from fractions import Fraction

from brun.divisor_error import scan_c


def main():
    print("alpha    certified max of envelope        argmax")
    for alpha in (Fraction(1, 3), Fraction(2, 5), Fraction(9, 20)):
        scan = scan_c(alpha, 10**5)
        print(
            f"{str(alpha):>5}    [{scan.bound.lo:.6f}, {scan.bound.hi:.6f}]"
            f"    {scan.argmax:.6e}"
        )

    print()
    third = scan_c(Fraction(1, 3), 10**5)
    print(
        "note: at alpha=1/3 the certified lower end "
        f"{third.bound.lo:.4f} already exceeds 1.16, so any claimed "
        "envelope constant at or below 1.16 cannot hold"
    )


if __name__ == "__main__":
    main()

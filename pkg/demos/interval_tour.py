#!/usr/bin/env python3
# interval_tour.py
#
# A short tour of the directed-rounding interval type.  Every operation
# widens its result outward by a floating-point nudge per side, so the
# printed brackets are guaranteed enclosures of the exact real value.
#
# Run: python3 demos/interval_tour.py

from fractions import Fraction

from brun.interval import EULER_GAMMA, Interval


def show(label, iv):
    print(f"{label:<28} [{iv.lo!r}, {iv.hi!r}]  width {iv.width:.3e}")


def main():
    print("point intervals are exact; arithmetic rounds outward")
    tenth = Interval.point(1.0) / Interval.point(10.0)
    show("1/10", tenth)
    exact = Fraction(1, 10)
    print(f"  contains the exact rational: {tenth.lo <= exact <= tenth.hi}")
    print()

    print("accumulation: summing 0.1 ten times does NOT give exactly 1")
    acc = Interval.point(0.0)
    for _ in range(10):
        acc = acc + tenth
    show("sum of ten tenths", acc)
    print(f"  1.0 inside: {acc.lo <= 1.0 <= acc.hi}")
    print()

    print("transcendental endpoints carry two nudges per side")
    show("log 2", Interval.point(2.0).log())
    show("exp 1", Interval.point(1.0).exp())
    show("sqrt 2", Interval.point(2.0).sqrt())
    show("Euler gamma constant", EULER_GAMMA)
    print()

    print("division by an interval straddling zero is rejected")
    try:
        Interval.point(1.0) / Interval(-1.0, 1.0)
    except ZeroDivisionError as exc:
        print(f"  ZeroDivisionError: {exc}")


if __name__ == "__main__":
    main()

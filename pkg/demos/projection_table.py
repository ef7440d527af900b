#!/usr/bin/env python3
# Conjectural projections: where would the upper bound go with bigger
# censuses?  Each row feeds a density-integral prediction of the twin
# count at 10^k, plus an assumed limit value for the pair sum, through
# the same certified-bound assembly used for real censuses.  The inputs
# are heuristic, so nothing here is a certificate; the point is to see
# the diminishing returns of ever-larger sieving runs.

from brun.projection import DEFAULT_B_ASSUMED, project_table


def main():
    ks = [16, 19, 20, 25, 40, 80]
    print(f"assumed limit value: {DEFAULT_B_ASSUMED}")
    print()
    print(f"{'10^k':>6}  {'predicted pairs':>22}  {'predicted B(10^k)':>18}  {'upper':>8}")
    for row in project_table(ks):
        print(
            f"10^{row.k:<3}  {row.pi2_pred:>22.6e}  "
            f"{row.b_pred:>18.10f}  {row.upper_pred:>8.4f}"
        )
    print()
    print("all rows are non-rigorous projections, not certificates")


if __name__ == "__main__":
    main()

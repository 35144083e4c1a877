#!/usr/bin/env python3
"""Desk-scale decay experiment: census tables for growing boxes.

Prints one CSV block per (q, k, kind) cell list, followed by the
monotonicity report.  The additive ratio columns shrink steadily; the
multiplicative columns at tiny N show the jump where the perfect-power
count first grows (exponents divisible by q start fitting at N = q).

Usage:
    python scripts/decay_experiment.py [--workers W]
"""

import argparse

from qres import ADDITIVE, MULTIPLICATIVE, decay_table
from qres.census import CSV_HEADER, csv_row

RUNS = [
    (2, 1, (4, 9, 16, 25, 36), ADDITIVE),
    (2, 2, (4, 9, 16, 25, 36), ADDITIVE),
    (2, 3, (4, 9, 16, 25, 36), ADDITIVE),
    (3, 1, (2, 4, 8, 12), ADDITIVE),
    (3, 2, (2, 4, 8, 12), ADDITIVE),
    (3, 1, (1, 2, 3), MULTIPLICATIVE),
    (3, 2, (1, 2, 3), MULTIPLICATIVE),
    (2, 2, (1, 2, 3), MULTIPLICATIVE),
]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    for q, k, sizes, kind in RUNS:
        rows, report = decay_table(q, k, sizes, kind, workers=args.workers)
        print(f"# q={q} k={k} kind={kind}")
        print(CSV_HEADER)
        for row in rows:
            print(csv_row(row))
        print(
            f"# ratio non-increasing: {report.ratio_nonincreasing}; "
            f"strictly decreasing: {report.ratio_strictly_decreasing}; "
            f"max normalized: {report.max_normalized:.6f}"
        )
        print()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

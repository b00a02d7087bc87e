#!/usr/bin/env python3
"""Sweep the exponent grid n = 0.1 ... 2.0 and print the wall-curvature table.

Runs both the non-iterative method and the shooting oracle so the rendered
CSV includes the per-row discrepancy.
"""

import argparse

from blasius_powerlaw.report import SweepSpec, render_table, sweep_table


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-from", type=float, default=0.1)
    parser.add_argument("--n-to", type=float, default=2.0)
    parser.add_argument("--n-step", type=float, default=0.1)
    parser.add_argument("--method", choices=("nitm", "shooting", "both"), default="both")
    args = parser.parse_args()

    values = []
    v = args.n_from
    while v <= args.n_to + 1e-12:
        values.append(round(v, 12))
        v += args.n_step
    rows = sweep_table(SweepSpec(n_values=tuple(values), method=args.method))
    print(render_table(rows), end="")


if __name__ == "__main__":
    main()

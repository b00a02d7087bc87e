#!/usr/bin/env python3
"""Study how the computed wall curvature depends on the truncated boundary.

Prints f''(0) for a list of truncated boundaries together with the change
between consecutive entries, which estimates the truncation error.
"""

import argparse

from blasius_powerlaw.report import boundary_sensitivity


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=float, default=1.0)
    parser.add_argument(
        "--eta-inf",
        default="6,8,10,15,20",
        help="comma-separated truncated boundaries",
    )
    args = parser.parse_args()

    etas = [float(x) for x in args.eta_inf.split(",") if x]
    records = boundary_sensitivity(args.n, etas)
    print("eta_inf,fpp0,delta_vs_previous,error")
    prev = None
    for eta, fpp0, err in records:
        delta = "" if (prev is None or fpp0 is None) else repr(abs(fpp0 - prev))
        print(f"{eta:g},{'' if fpp0 is None else repr(fpp0)},{delta},{err or ''}")
        prev = fpp0 if fpp0 is not None else prev


if __name__ == "__main__":
    main()

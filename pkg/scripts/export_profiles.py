#!/usr/bin/env python3
"""Export velocity/shear profiles (eta, f, f', f'') to CSV files.

Defaults to the shear-thinning and shear-thickening showcases n = 0.3 and
n = 1.7, writing one file per exponent.
"""

import argparse
import pathlib

from blasius_powerlaw.nitm import solve
from blasius_powerlaw.report import export_profile


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=float, action="append", default=None)
    parser.add_argument("--outdir", type=pathlib.Path, default=pathlib.Path("profiles"))
    parser.add_argument("--columns", default="eta,f,fp,fpp")
    args = parser.parse_args()

    exponents = args.n or [0.3, 1.7]
    columns = tuple(c for c in args.columns.split(",") if c)
    args.outdir.mkdir(parents=True, exist_ok=True)
    for n in exponents:
        result = solve(n)
        path = args.outdir / f"profile_n{n:g}.csv"
        path.write_text(export_profile(result, columns))
        print(f"wrote {path} ({len(result.profile.etas)} rows, fpp0={result.fpp0!r})")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Reproduce the error-rate-vs-noise-level figure for d=2 and d=3.

Desk-scale by default (2000 trials per grid point); pass --full for the
10000-trial version.  Outputs land in results/.
"""

import pathlib
import sys

from pmlab.cli import main

if __name__ == "__main__":
    out = pathlib.Path("results")
    out.mkdir(exist_ok=True)
    extra = sys.argv[1:]
    for d in (2, 3):
        code = main(
            [
                "figure-error-rate",
                "--d",
                str(d),
                "--seed",
                "20240817",
                "--out-csv",
                str(out / f"error_rate_d{d}.csv"),
                "--out-svg",
                str(out / f"error_rate_d{d}.svg"),
                *extra,
            ]
        )
        if code != 0:
            sys.exit(code)
    print(f"wrote {out}/error_rate_d2.(csv|svg) and {out}/error_rate_d3.(csv|svg)")

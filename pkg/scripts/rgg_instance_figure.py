#!/usr/bin/env python3
"""Draw one matched instance: mistakes in red, close initial pairs in blue.

Desk-scale (n=500) by default; pass --full for the n=3000 version.
"""

import pathlib
import sys

from pmlab.cli import main

if __name__ == "__main__":
    out = pathlib.Path("results")
    out.mkdir(exist_ok=True)
    extra = sys.argv[1:]
    for sigma2 in ("1e-5", "1e-4"):
        code = main(
            [
                "figure-rgg",
                "--sigma2",
                sigma2,
                "--seed",
                "7",
                "--out-svg",
                str(out / f"rgg_instance_{sigma2}.svg"),
                "--out-json",
                str(out / f"rgg_instance_{sigma2}.json"),
                *extra,
            ]
        )
        if code != 0:
            sys.exit(code)
    print(f"wrote {out}/rgg_instance_*.svg")

#!/usr/bin/env python3
"""Maximum matching size of the geometric graph vs radius, with the closed-form floor."""

import pathlib
import sys

from pmlab.cli import main

if __name__ == "__main__":
    out = pathlib.Path("results")
    out.mkdir(exist_ok=True)
    code = main(
        [
            "rgg-sweep",
            "--n",
            "200",
            "--d",
            "2",
            "--r-grid",
            "0.02,0.05,0.1,0.3,1.0",
            "--trials",
            "200",
            "--rd",
            "2.0",
            "--seed",
            "13",
            "--out",
            str(out / "matching_sweep.csv"),
            *sys.argv[1:],
        ]
    )
    if code == 0:
        print(f"wrote {out}/matching_sweep.csv")
    sys.exit(code)

#!/usr/bin/env python3
"""Emit the plot-ready CSV families: fractional growth curves plus the
unit-impulse and unit-step response sweeps (gamma in {0.5, 0.7, 0.9, 1.0},
r = d = 1).  One file per gamma under the chosen output directory."""

import argparse
import pathlib
import sys

from sadik_frac.cli import main as cli_main


def run(out_dir: str) -> int:
    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rc = 0
    rc |= cli_main(["fode", "--fig1", "--out", str(out / "growth")])
    rc |= cli_main(["control", "--fig2", "--out", str(out / "impulse")])
    rc |= cli_main(["control", "--fig3", "--out", str(out / "step")])
    return rc


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="out/figures")
    args = ap.parse_args()
    sys.exit(run(args.out_dir))

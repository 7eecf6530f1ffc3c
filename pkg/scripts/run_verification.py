#!/usr/bin/env python3
"""Run every theorem self-verification suite and print the report."""

import sys

from sadik_frac.cli import main as cli_main

if __name__ == "__main__":
    sys.exit(cli_main(["verify", "all"]))

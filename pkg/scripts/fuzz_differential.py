#!/usr/bin/env python3
"""Differential harness: generate programs and check that every strategy
produces the same kill matrix.

Usage: python scripts/fuzz_differential.py [--count 200] [--seed 0] [--dump]
Exit code 3 on any disagreement.
"""

import sys

from mutlab.cli import main

if __name__ == "__main__":
    argv = sys.argv[1:]
    if "--count" not in argv:
        argv = ["--count", "200", "--seed", "0", *argv]
    sys.exit(main(["fuzz", *argv]))

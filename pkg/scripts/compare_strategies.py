#!/usr/bin/env python3
"""Compare all seven strategies on one program and cross-check verdicts.

Usage: python scripts/compare_strategies.py corpus/prime.ml0 [--format csv]
Exit code 3 if any strategy disagrees with Traditional.
"""

import sys

from mutlab.cli import main

if __name__ == "__main__":
    if len(sys.argv) < 2:
        print(__doc__)
        sys.exit(2)
    program, rest = sys.argv[1], sys.argv[2:]
    sys.exit(main(["compare", "--program", program, "--all", *rest]))

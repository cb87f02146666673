#!/usr/bin/env python3
"""Run all seven strategies over the five-program corpus.

Writes one JSON report per program plus a summary CSV, prints a
per-program cost table and the mean exec-taints/traditional ratio.

Usage: python scripts/run_corpus.py [--out reports/] [--budget-mult N]
"""

import sys

from mutlab.cli import main

if __name__ == "__main__":
    sys.exit(main(["corpus", "run", *sys.argv[1:]]))

"""mutlab: mutation analysis with execution-taint sharing over a small
imperative language (.ml0), plus baseline strategies and cost comparison."""

__version__ = "0.1.0"

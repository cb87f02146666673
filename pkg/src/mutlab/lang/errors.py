"""Error types shared by the parser and the evaluators."""

from __future__ import annotations

from .nodes import Loc


class MiniSyntaxError(Exception):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class MiniRuntimeError(Exception):
    """A runtime failure in the mini-language (division by zero, bad types,
    overflow, index errors, arity mismatch...)."""

    def __init__(self, kind: str, message: str, loc: Loc | None = None):
        super().__init__(f"{kind}: {message}" + (f" at {loc}" if loc else ""))
        self.kind = kind
        self.message = message
        self.loc = loc


class MiniAssertionError(Exception):
    def __init__(self, loc: Loc):
        super().__init__(f"assertion failed at {loc}")
        self.loc = loc


class StepBudgetExceeded(Exception):
    """Raised when an execution exceeds its statement budget."""

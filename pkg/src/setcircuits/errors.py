"""Errors shared across engines, representations, and transforms."""
from __future__ import annotations


class FragmentError(ValueError):
    """The circuit's operation set is outside what the requested engine supports."""


class OpenFragmentError(FragmentError):
    """Fragments whose membership problem has no known decision procedure.

    Raised for circuits mixing comp with both add and mul; decidability of
    that combination is open, so no engine may claim a verdict.
    """


class BudgetExceeded(RuntimeError):
    """A configured resource budget was hit before a verdict was reached.

    Deliberately distinct from any membership verdict: callers must treat it
    as "not decided at this budget", never as false.
    """

    def __init__(self, kind: str, detail: str = ""):
        self.kind = kind
        super().__init__(f"budget exceeded ({kind})" + (f": {detail}" if detail else ""))

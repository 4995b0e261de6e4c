"""Positioned diagnostics with stable error codes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .terms import Term

E_UNBOUND = "E001"
E_MISMATCH = "E002"
E_UNIVERSE = "E003"
E_NOT_FUNCTION = "E004"
E_NOT_PAIR = "E005"
E_ELIM_SHAPE = "E006"
E_DUPLICATE = "E007"
E_STEP_LIMIT = "E008"
E_PARSE = "E009"
E_IMPORT_CYCLE = "E010"

CODE_DESCRIPTIONS = {
    E_UNBOUND: "unbound identifier",
    E_MISMATCH: "type mismatch",
    E_UNIVERSE: "universe error",
    E_NOT_FUNCTION: "not a function",
    E_NOT_PAIR: "not a pair",
    E_ELIM_SHAPE: "eliminator arity/shape",
    E_DUPLICATE: "duplicate name",
    E_STEP_LIMIT: "step limit",
    E_PARSE: "parse error",
    E_IMPORT_CYCLE: "import cycle",
}


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int  # 1-based
    column: int  # 1-based
    end_line: int = 0
    end_column: int = 0

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


UNKNOWN_SPAN = SourceSpan("<unknown>", 0, 0)


class Diagnostic(Exception):
    """A checker or parser error.

    Raised where detected; callers either surface it (CLI) or collect
    it (library harness).  E002 diagnostics always carry the expected
    and actual types in normal form.
    """

    def __init__(self, code: str, message: str,
                 span: Optional[SourceSpan] = None,
                 expected: Optional[Term] = None,
                 actual: Optional[Term] = None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.span = span
        self.expected = expected
        self.actual = actual

    def with_span(self, span: SourceSpan) -> "Diagnostic":
        """Attach a span if none was recorded at the raise site."""
        if self.span is None:
            self.span = span
        return self

    def render(self) -> str:
        span = self.span or UNKNOWN_SPAN
        return f"{span}: {self.code}: {self.message}"


class StepLimitExceeded(Exception):
    """Reduction-step budget exhausted; surfaced as E008."""

    def __init__(self, limit: int):
        super().__init__(f"step limit of {limit} exceeded")
        self.limit = limit

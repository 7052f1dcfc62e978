"""Shared exception types.

Exit-code mapping used by the CLI: ParseError -> 2, everything else
derived from ValflagError -> 3.
"""


class ValflagError(Exception):
    """Base class for all library errors."""


class ParseError(ValflagError):
    """Input text does not conform to a grammar.

    Carries a character position; line/column are derived lazily so callers
    that never print the error pay nothing.
    """

    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.message = message
        self.text = text
        self.pos = pos
        super().__init__(self._format())

    def _format(self) -> str:
        if not self.text:
            return self.message
        line = self.text.count("\n", 0, self.pos) + 1
        col = self.pos - (self.text.rfind("\n", 0, self.pos) + 1) + 1
        return f"{self.message} (line {line}, column {col})"


class DimensionError(ValflagError):
    """Operands have incompatible dimensions or variable counts."""


class DomainError(ValflagError):
    """A precondition or domain restriction is violated."""


class CapacityError(ValflagError):
    """A configured resource bound was exceeded (radical cap, search cap)."""

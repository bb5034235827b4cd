"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside an operation's domain (wrong box, wrong codimension, ...)."""


class InvariantError(DomainError):
    """A value was constructed violating one of its invariants."""


class ParseError(ValueError):
    """Syntax error in bundle, space or GW expression text."""

    def __init__(self, message: str, text: str, offset: int, expected=()):
        self.text = text
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        where = f" at offset {offset}"
        exp = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message}{where}{exp}")

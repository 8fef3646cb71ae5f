"""Exception hierarchy shared by every module."""


class TreeAutoError(Exception):
    pass


class PresentationError(TreeAutoError, ValueError):
    """Malformed presentation data: unknown state, bad arity, letter out of range."""


class ParseError(PresentationError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.message = message
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", col {col}" if col is not None else "") + ": "
        super().__init__(where + message)


class BudgetExceeded(TreeAutoError):
    """A table or search would exceed its configured size limit."""


class PreconditionError(TreeAutoError, ValueError):
    """An operation was called on input outside its documented domain."""

"""Exception hierarchy shared by the library and the CLI."""


class VennError(Exception):
    """Base class for all errors raised by venndim."""


class InvalidDiagram(VennError):
    """A diagram violates a structural invariant (malformed map, dirty grid)."""


class PreconditionError(VennError):
    """An operation was called on input outside its documented domain."""


class BudgetExceeded(VennError):
    """A configured size budget (cells, subsets) would be exceeded."""


class FormatError(VennError):
    """A diagram or report file could not be parsed."""

"""Exception hierarchy shared by every warpsat package."""


class WarpsatError(Exception):
    """Base class for all warpsat failures."""

    def __init__(self, value):
        super().__init__(value)
        self.value = value

    def __str__(self):
        return f"{type(self).__name__}: {self.value}"


class ContractError(WarpsatError, ValueError):
    """A caller broke a documented precondition."""


class OracleCapError(ContractError):
    """Exhaustive enumeration refused because N is above the oracle cap."""


class ConvergenceError(WarpsatError):
    """An iterative solver ran out of iterations.

    Args:
        value: human readable message
        last_iterate: the last value reached before giving up
    """

    def __init__(self, value, last_iterate=None):
        super().__init__(value)
        self.last_iterate = last_iterate


class SeriesOverflowError(WarpsatError, OverflowError):
    """A power series left the regime where plain summation is accurate."""


class DimacsError(WarpsatError):
    """Malformed DIMACS input. ``line`` is 1-based, or None if not tied to a line."""

    def __init__(self, value, line=None):
        super().__init__(value)
        self.line = line

    def __str__(self):
        if self.line is None:
            return f"{type(self).__name__}: {self.value}"
        return f"{type(self).__name__}: Line {self.line}. {self.value}"


class HeaderError(DimacsError):
    pass


class LiteralRangeError(DimacsError):
    pass


class ClauseWidthError(DimacsError):
    pass


class DuplicateVariableError(DimacsError):
    pass


class ClauseCountError(DimacsError):
    pass

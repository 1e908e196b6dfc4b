"""Exception hierarchy shared by every module."""


class EqalgError(Exception):
    """Base class for all workbench errors."""


class StructureError(EqalgError, ValueError):
    """Malformed input: wrong table shape, out-of-range entry, bad name."""


class PreconditionError(EqalgError, ValueError):
    """An operation was called on a value that does not meet its precondition.

    ``witness`` carries the offending element tuple when one exists.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CongruenceError(EqalgError):
    """The relation induced by a subset is not a congruence, or the
    quotient tables are not well defined."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BudgetExceeded(EqalgError):
    """A search hit its resource cap before finishing."""


class TheoremViolation(EqalgError, AssertionError):
    """Two routes that must agree on every algebra disagreed.

    Raised from internal cross-checks; it signals either an engine bug or a
    genuine counterexample and is never swallowed.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

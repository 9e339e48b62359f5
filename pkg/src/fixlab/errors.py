"""Exception hierarchy shared by every fixlab module."""


class FixlabError(Exception):
    """Base class for all library errors."""


class DegreeMismatch(FixlabError, ValueError):
    pass


class OrderCapExceeded(FixlabError):
    """A closure or enumeration grew past its configured cap."""


class NotSubgroup(FixlabError, ValueError):
    pass


class NotNormal(FixlabError, ValueError):
    pass


class PreconditionError(FixlabError, ValueError):
    """An operation was called on inputs outside its contract."""


class InvariantViolation(FixlabError):
    """Something the mathematics guarantees did not happen.

    Almost always an implementation bug, never bad input.
    """


class TheoremViolation(FixlabError):
    """An exhaustive search found no witness where a theorem promises one.

    Carries a ``witness`` dict with enough data to reproduce the instance.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness or {}


class HypothesesUnmet(FixlabError):
    """The inputs do not satisfy the hypotheses of the theorem being applied."""


class ParseError(FixlabError, ValueError):
    pass

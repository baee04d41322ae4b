"""Exception hierarchy shared by all modules."""


class ProbinfError(ValueError):
    """Base class for domain errors raised by probinf."""


class SpaceMismatchError(ProbinfError):
    """Operands live on different world spaces."""


class ArityError(ProbinfError):
    pass


class FormulaSyntaxError(ProbinfError):
    """Malformed formula text; ``position`` is the 0-based character offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnboundNameError(ProbinfError):
    def __init__(self, name, position):
        super().__init__(f"unbound name {name!r} at position {position}")
        self.name = name
        self.position = position


class ZeroProbabilityError(ProbinfError):
    """Conditioning on an event of probability zero."""


class InvariantError(ProbinfError):
    """A value violates a documented type invariant."""


class EnumerationLimitError(ProbinfError):
    """The world space is too large for exhaustive enumeration."""


class DegenerateSampleError(ProbinfError):
    """Sample has zero standard deviation."""

"""Exception types shared across the package."""


class RelspaceError(Exception):
    """Base class for every error raised by this package."""


class DomainError(RelspaceError, ValueError):
    """An input lies outside the mathematical domain of an operation."""


class ZeroProbabilityCollapse(RelspaceError):
    """Collapse was requested onto an outcome with (near-)zero probability."""


class InvalidSequence(RelspaceError, ValueError):
    """A question sequence is empty or repeats a dimension consecutively."""


class EmptyGroup(RelspaceError):
    """A required question-order group has no records for the query."""


class MissingProbability(RelspaceError):
    """A probability required by the computation is unavailable.

    Carries the name of the missing quantity in ``name``.
    """

    def __init__(self, name: str, detail: str = ""):
        self.name = name
        message = f"probability {name!r} is unavailable"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class InfeasibleModel(RelspaceError):
    """The observed probabilities cannot be represented by the model family.

    Raised when the elicited cos(theta_r) falls outside [-1, 1] beyond the
    clamping band; the raw value is kept in ``cos_theta_raw``.
    """

    def __init__(self, cos_theta_raw: float):
        self.cos_theta_raw = cos_theta_raw
        super().__init__(
            f"model infeasible: cos(theta_r) = {cos_theta_raw:.6f} lies outside [-1, 1]"
        )


class ParseError(RelspaceError):
    """An input file failed to parse; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateRespondent(ParseError):
    """The same (respondent_id, query_id) pair appeared more than once."""


class UnknownSequenceTag(ParseError):
    """A response row used a question-order tag other than TUR or TRU."""

"""Exception types shared across the package."""


class EaqeccError(Exception):
    """Base class for all errors raised by this package."""


class InvalidFieldError(EaqeccError):
    """An operation needs a field property the given field does not have."""


class PreconditionError(EaqeccError):
    """Input violates a documented precondition."""


class RuleNotApplicableError(EaqeccError):
    """A propagation rule's side conditions are not met."""


class BudgetError(EaqeccError):
    """An exhaustive search would exceed the configured work cap."""


class RecordParseError(EaqeccError):
    """A record or matrix file could not be parsed."""

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class DataIntegrityError(EaqeccError):
    """A bundled data file is missing or fails its checksum."""

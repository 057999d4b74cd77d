"""
Exception hierarchy shared by every lab module.

All errors raised by the exact evaluators derive from LabError so that the
management commands and API views can translate them in one place.
"""


class LabError(Exception):
    """Base class for errors raised by the floor-sum lab."""

    default_message = 'Floor-sum lab error'

    def __init__(self, message=None, **details):
        self.message = message or self.default_message
        self.details = details
        super().__init__(self.message)

    def as_dict(self):
        """Return a JSON-friendly representation used by API responses."""
        payload = {'error': self.message}
        if self.details:
            payload['details'] = {key: str(value) for key, value in self.details.items()}
        return payload


class PreconditionError(LabError, ValueError):
    """An operation was called outside its documented preconditions."""

    default_message = 'Precondition violated'


class DivergentParametersError(PreconditionError):
    """The series defining C_f does not converge for the given parameters."""

    default_message = 'C_f diverges for alpha >= 2r - 1'


class RangeViolationError(PreconditionError):
    """A parameter range required by a bound evaluator does not hold."""

    default_message = 'Parameter range violated'

    def __init__(self, condition, message=None, **details):
        self.condition = condition
        super().__init__(message or f"Range condition failed: {condition}", condition=condition, **details)


class WordParseError(PreconditionError):
    """A process word contains characters outside {A, B, digits, ^}."""

    default_message = 'Could not parse process word'


class EmptyWitnessError(PreconditionError):
    """No n satisfies floor(x/n) = d^r."""

    default_message = 'd is not representable'


class VerificationError(LabError):
    """A constructed object failed its own verification."""

    default_message = 'Verification failed'


class InvariantViolation(LabError):
    """An identity that must hold exactly was found to fail."""

    default_message = 'Invariant violated'


class FitError(LabError):
    """Not enough usable rows to fit an exponent."""

    default_message = 'Need at least two rows with nonzero error'


class SweepPrecisionError(LabError):
    """The C_f enclosure could not be made narrow enough for a sweep."""

    default_message = 'C_f enclosure too wide for the requested sweep'

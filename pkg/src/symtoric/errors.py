"""Exception hierarchy.

``SymtoricError`` subclasses split into input problems (bad data, violated
preconditions) and mathematical verification failures; the CLI maps the
former to exit code 2 and the latter to exit code 1.
"""


class SymtoricError(Exception):
    """Base class for every error raised by this package."""


class InputError(SymtoricError, ValueError):
    """Malformed or inconsistent input."""


class VerificationFailure(SymtoricError):
    """A mathematical condition the caller asked about does not hold."""


# symplin
class OddDimension(VerificationFailure):
    pass


class Degenerate(VerificationFailure):
    pass


class NotLagrangian(VerificationFailure):
    pass


class PreconditionError(VerificationFailure):
    pass


class InvarianceViolation(VerificationFailure):
    pass


# polytope
class Unbounded(VerificationFailure):
    pass


class Empty(VerificationFailure):
    pass


class InconsistentEquations(VerificationFailure):
    pass


# delzant
class NotDelzant(VerificationFailure):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NegativeModulus(VerificationFailure):
    pass


class OutsidePolytope(VerificationFailure):
    pass


# quant
class IntegralityFailure(VerificationFailure):
    pass


class KernelConditionViolated(VerificationFailure):
    def __init__(self, message, pairings=()):
        super().__init__(message)
        self.pairings = tuple(pairings)

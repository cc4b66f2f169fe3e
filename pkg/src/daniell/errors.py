"""Exception types shared across the package."""


class DaniellError(Exception):
    """Base class for all errors raised by :mod:`daniell`."""


class DomainMismatchError(DaniellError, ValueError):
    """Two operands live on different domains or in different spaces."""


class MalformedInputError(DaniellError, ValueError):
    """Raw data cannot be turned into a valid element."""


class InvalidLevelError(DaniellError, ValueError):
    """A refinement level outside the admissible range was requested."""


class InvalidBoundError(DaniellError, ValueError):
    """A caller-supplied bound does not dominate the function it should."""


class InvalidCertificateError(DaniellError, ValueError):
    """A witness tree violates its own domination or stationarity claim."""


class FubiniDiscrepancyError(DaniellError, ArithmeticError):
    """The two iterated integrals disagree. Signals an arithmetic bug."""


class ConvergenceFailure(DaniellError, ArithmeticError):
    """A limit did not settle within the allowed number of steps.

    ``trajectory`` holds the sequence of values that was observed.
    """

    def __init__(self, message, trajectory=()):
        super().__init__(message)
        self.trajectory = tuple(trajectory)


class InsufficientSamplesError(DaniellError, RuntimeError):
    """The element sampler ran dry before the requested number of trials.

    The partially filled report is available as ``report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ScenarioError(DaniellError, ValueError):
    """A scenario file failed to parse or validate."""

"""Exception hierarchy.

Every error raised deliberately by the library derives from
:class:`PhaseOpsError`; the CLI turns these into ``ERROR <code>: <message>``
lines where ``<code>`` is the class name.
"""


class PhaseOpsError(Exception):
    """Base class for all library errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


class ParameterOutOfRange(PhaseOpsError, ValueError):
    pass


class GegenbauerLambdaZero(ParameterOutOfRange):
    pass


class InvalidTable(PhaseOpsError, ValueError):
    pass


class DomainError(PhaseOpsError, ValueError):
    pass


class TableTooShort(PhaseOpsError, IndexError):
    pass


class DimensionMismatch(PhaseOpsError, ValueError):
    pass


class NotHermitian(PhaseOpsError, ValueError):
    pass


class SpectrumOutOfRange(PhaseOpsError, ValueError):
    pass


class ConvergenceFailure(PhaseOpsError, RuntimeError):
    pass


class NonConvergence(PhaseOpsError, RuntimeError):
    pass


class QuadratureNonConvergence(NonConvergence):
    pass


class InvalidState(PhaseOpsError, ValueError):
    pass


class SupportExceedsTruncation(PhaseOpsError, ValueError):
    pass


class TruncationInsufficient(PhaseOpsError, ValueError):
    """Raised when a coherent state does not fit in the requested dimension."""

    def __init__(self, message: str, required_dim: int):
        super().__init__(message)
        self.required_dim = required_dim

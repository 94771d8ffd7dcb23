"""Exception hierarchy shared by every module of the package."""


class WhyStreamError(Exception):
    """Base class for all errors raised by whystream."""


class TypeMismatch(WhyStreamError, TypeError):
    """An event or a connection does not have the expected type."""


class DomainError(WhyStreamError, ValueError):
    """A function was applied outside of its domain (e.g. division by zero)."""


class PipelineError(WhyStreamError):
    pass


class DuplicateInputConnection(PipelineError):
    pass


class CycleDetected(PipelineError):
    pass


class UnknownProcessor(WhyStreamError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class PositionNotYetProduced(WhyStreamError, LookupError):
    """The queried output event does not exist (yet).

    Distinct from an empty explanation: temporal operators may not have
    reached a verdict for this position.
    """


class NoFireableTransition(WhyStreamError):
    pass


class ContractViolation(WhyStreamError):
    """A nested processor broke the contract of its enclosing processor."""


class ParseError(WhyStreamError, ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
        self.message = message

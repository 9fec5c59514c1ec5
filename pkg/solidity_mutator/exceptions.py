"""
Custom exceptions for the Solidity mutation testing application.
"""


class SolidityMutatorError(Exception):
    """Base exception for mutation testing errors."""
    pass


class SpanMismatchError(SolidityMutatorError):
    """Raised when a mutation's original text does not match the source slice."""

    def __init__(self, expected: str, found: str):
        self.expected = expected
        self.found = found
        super().__init__(f"Span mismatch: expected {expected!r}, found {found!r}")


class SolidityParseError(SolidityMutatorError):
    """Raised when a Solidity source file is syntactically invalid."""

    def __init__(self, message: str, line: int, column: int, path: str = ''):
        self.message = message
        self.line = line
        self.column = column
        self.path = path
        location = f"{path}:{line}:{column}" if path else f"{line}:{column}"
        super().__init__(f"{location}: {message}")


class EmptyTargetSetError(SolidityMutatorError):
    """Raised when no contract file matches the include pattern."""
    pass


class ConfigError(SolidityMutatorError):
    """Raised when the campaign configuration is invalid."""
    pass


class UnknownOperatorError(ConfigError):
    """Raised when an operator id is not part of the catalog."""
    pass


class MaterializeError(SolidityMutatorError):
    """Raised when mutant files cannot be written to the work directory."""
    pass


class BaselineFailure(SolidityMutatorError):
    """Raised when the unmutated project does not compile or its tests fail."""

    def __init__(self, phase: str, log: str):
        self.phase = phase
        self.log = log
        super().__init__(f"Baseline {phase} phase failed")


class SandboxError(SolidityMutatorError):
    """Raised when a sandbox cannot be prepared or a command cannot be spawned."""
    pass


class InvalidCountsError(SolidityMutatorError):
    """Raised when mutation score counts are inconsistent."""
    pass


class UnknownEquivalentIdError(SolidityMutatorError):
    """Raised when a declared equivalent mutant id is not part of the campaign."""
    pass


class EquivalentNotLiveError(SolidityMutatorError):
    """Raised when a mutant declared equivalent was not classified as live."""
    pass


class ReportError(SolidityMutatorError):
    """Raised when report files cannot be written."""
    pass

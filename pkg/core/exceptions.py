"""
Exception hierarchy shared by every lab package.

Each exception carries a stable error_code so the CLI, the campaign runner and
the HTTP layer can report failures uniformly.
"""

from typing import Optional

from schemas.response import ErrorCodes


# Custom exception classes for lab operations
class LabError(Exception):
    """
    Base exception for every lab failure that callers are expected to handle
    """
    def __init__(self, message: str, error_code: str = None, status_code: int = 400):
        self.message = message
        self.error_code = error_code or ErrorCodes.LAB_ERROR
        self.status_code = status_code
        super().__init__(self.message)


class ValidationError(LabError):
    """
    Input violates an operation precondition (length, sign, emptiness)
    """
    def __init__(self, message: str = "Invalid input"):
        super().__init__(message, ErrorCodes.VALIDATION_ERROR, 422)


class DomainError(LabError):
    """
    Argument lies outside the mathematical domain of a formula
    """
    def __init__(self, message: str = "Argument outside formula domain"):
        super().__init__(message, ErrorCodes.DOMAIN_ERROR, 422)


class ParameterError(LabError):
    """
    Unsupported code parameters
    """
    def __init__(self, message: str = "Unsupported parameters"):
        super().__init__(message, ErrorCodes.UNSUPPORTED_PARAMETERS, 422)


class ConfigurationError(LabError):
    """
    Experiment configuration or polynomial bank is unusable
    """
    def __init__(self, message: str = "Invalid configuration", field: Optional[str] = None, line: Optional[int] = None):
        self.field = field
        self.line = line
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field:
            location.append(f"field '{field}'")
        if location:
            message = f"{message} ({', '.join(location)})"
        super().__init__(message, ErrorCodes.CONFIGURATION_ERROR, 422)


class ReseedRefused(LabError):
    """
    Pool 0 has not accumulated enough declared entropy
    """
    def __init__(self, message: str = "Pool 0 entropy below reseed threshold"):
        super().__init__(message, ErrorCodes.RESEED_REFUSED, 409)


class NotSeededError(LabError):
    """
    Generator asked for output before its first reseed
    """
    def __init__(self, message: str = "Generator has never been seeded"):
        super().__init__(message, ErrorCodes.NOT_SEEDED, 409)


class ResourceLimitError(LabError):
    """
    Requested work exceeds a configured cap
    """
    def __init__(self, message: str = "Resource limit exceeded"):
        super().__init__(message, ErrorCodes.RESOURCE_LIMIT, 413)


class ReconciliationError(LabError):
    """
    Secure-sketch recovery failed; error_code tells the variants apart
    """
    def __init__(self, message: str, error_code: str = ErrorCodes.DECODE_FAILURE):
        super().__init__(message, error_code, 409)


class OutputError(LabError):
    """
    Writing a result artifact failed
    """
    def __init__(self, message: str, path: str = None):
        self.path = path
        if path:
            message = f"{message}: {path}"
        super().__init__(message, ErrorCodes.IO_ERROR, 500)


class ResourceNotFoundException(LabError):
    """
    Requested record does not exist
    """
    def __init__(self, message: str = "Resource not found"):
        super().__init__(message, ErrorCodes.RESOURCE_NOT_FOUND, 404)



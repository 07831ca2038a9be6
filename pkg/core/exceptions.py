"""
Exception hierarchy for invertibility computations
Defines error codes, context payloads and CLI exit codes
"""
from typing import Dict, Any, Optional
from enum import Enum


class ErrorCode(Enum):
    """Standard error codes for the application"""

    # General errors (1000-1999)
    UNKNOWN_ERROR = 1000
    VALIDATION_ERROR = 1001
    CONFIGURATION_ERROR = 1002

    # Field errors (2000-2999)
    FIELD_SPEC_ERROR = 2000
    FIELD_MISMATCH = 2001
    FIELD_ZERO_DIVISION = 2002

    # Stencil errors (3000-3999)
    STENCIL_PARSE_ERROR = 3000
    STENCIL_FILE_ERROR = 3001

    # Sequence / algorithm errors (4000-4999)
    SEQUENCE_LENGTH_ERROR = 4000
    BANDWIDTH_ERROR = 4001

    # Verification errors (5000-5999)
    VERIFICATION_MISMATCH = 5000


# Exit codes of the command line front end
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_MISMATCH = 3


class ToeplitzError(Exception):
    """Base exception class for the application"""

    exit_code: int = EXIT_USAGE

    def __init__(self,
                 message: str,
                 error_code: ErrorCode = ErrorCode.UNKNOWN_ERROR,
                 context: Optional[Dict[str, Any]] = None,
                 cause: Optional[Exception] = None):
        super().__init__(message)
        self.message = message
        self.error_code = error_code
        self.context = context or {}
        self.cause = cause

    def to_dict(self) -> Dict[str, Any]:
        """Convert exception to dictionary for logging/JSON output"""
        return {
            'error_code': self.error_code.value,
            'error_name': self.error_code.name,
            'message': self.message,
            'context': self.context,
            'cause': str(self.cause) if self.cause else None
        }

    def __str__(self) -> str:
        return f"[{self.error_code.name}] {self.message}"


class ValidationError(ToeplitzError):
    """Raised when command line input validation fails"""

    def __init__(self, message: str, field: Optional[str] = None, value: Any = None,
                 context: Optional[Dict[str, Any]] = None):
        context = dict(context or {})
        if field:
            context['field'] = field
        if value is not None:
            context['invalid_value'] = str(value)

        super().__init__(
            message=message,
            error_code=ErrorCode.VALIDATION_ERROR,
            context=context
        )


class ConfigurationError(ToeplitzError):
    """Invalid settings read from the environment"""

    def __init__(self, message: str, setting: Optional[str] = None):
        super().__init__(
            message=message,
            error_code=ErrorCode.CONFIGURATION_ERROR,
            context={'setting': setting} if setting else {}
        )


class FieldSpecError(ToeplitzError):
    """Unparsable or invalid field specification (gf:<p>, rational, approx:<tol>)"""

    exit_code = EXIT_INPUT

    def __init__(self, message: str, spec: Optional[str] = None):
        super().__init__(
            message=message,
            error_code=ErrorCode.FIELD_SPEC_ERROR,
            context={'spec': spec} if spec is not None else {}
        )


class FieldMismatchError(ToeplitzError):
    """Operands belong to different fields"""

    def __init__(self, left: str, right: str):
        super().__init__(
            message=f"field mismatch: {left} vs {right}",
            error_code=ErrorCode.FIELD_MISMATCH,
            context={'left': left, 'right': right}
        )


class FieldZeroDivisionError(ToeplitzError, ZeroDivisionError):
    """Inversion of zero (or of a value within the approx tolerance)"""

    def __init__(self, field: str, value: Any = None):
        super().__init__(
            message=f"zero has no inverse in {field}",
            error_code=ErrorCode.FIELD_ZERO_DIVISION,
            context={'field': field, 'value': str(value)}
        )


class StencilParseError(ToeplitzError):
    """Stencil text or file could not be read"""

    exit_code = EXIT_INPUT

    def __init__(self, message: str, token: Optional[str] = None, source: Optional[str] = None):
        context = {}
        if token is not None:
            context['token'] = token
        if source:
            context['source'] = source

        super().__init__(
            message=message,
            error_code=ErrorCode.STENCIL_FILE_ERROR if source else ErrorCode.STENCIL_PARSE_ERROR,
            context=context
        )


class SequenceLengthError(ToeplitzError):
    """Requested sequence length below one"""

    def __init__(self, n: int):
        super().__init__(
            message=f"sequence length must be at least 1, got {n}",
            error_code=ErrorCode.SEQUENCE_LENGTH_ERROR,
            context={'n': n}
        )


class BandwidthError(ToeplitzError):
    """Operation called with a half-bandwidth or order it does not support"""

    def __init__(self, message: str, k: Optional[int] = None, n: Optional[int] = None):
        context = {}
        if k is not None:
            context['k'] = k
        if n is not None:
            context['n'] = n

        super().__init__(
            message=message,
            error_code=ErrorCode.BANDWIDTH_ERROR,
            context=context
        )


class VerificationMismatch(ToeplitzError):
    """Algorithms disagree; carries the minimal counterexample"""

    exit_code = EXIT_MISMATCH

    def __init__(self, message: str, counterexample: Optional[Dict[str, Any]] = None):
        super().__init__(
            message=message,
            error_code=ErrorCode.VERIFICATION_MISMATCH,
            context=counterexample or {}
        )

    @property
    def counterexample(self) -> Dict[str, Any]:
        return self.context

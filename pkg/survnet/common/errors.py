"""Common error types for survival modeling.

This module provides the error handling system shared by every part of the
package: standardized error codes grouped into categories, a context object
describing where a failure happened, and a hierarchy of exceptions for invalid
arguments, data ingestion problems, model file problems and numerical failures.

The module implements:
- Exceptions for arguments, ingestion, model files, state and numerics
- Context objects naming the operation, file and offending values
- CATEGORY### codes and their command-line exit statuses

Path: survnet/common/errors.py
"""
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional, Dict, Any

class ErrorCategory(Enum):
    """High-level categorization of errors."""
    FILE = "FILE"        # File system operations
    CONFIG = "CFG"       # Configuration handling
    DATA = "DATA"        # Dataset ingestion and schema
    MODEL = "MODEL"      # Model files and parameters
    NUMERIC = "NUM"      # Optimization and metric failures
    VALIDATION = "VAL"   # Argument validation
    STATE = "STATE"      # Object state management

    @property
    def exit_code(self) -> int:
        """Exit status used by the command line for this category."""
        if self in {ErrorCategory.FILE, ErrorCategory.CONFIG}:
            return 2
        if self == ErrorCategory.NUMERIC:
            return 4
        return 3

class ErrorCode(Enum):
    """Detailed error codes with categories.

    Format: CATEGORY### where CATEGORY is the error category and ### is a
    three-digit number.
    """
    # File operations (FILE)
    FILE_GENERAL = "FILE001"
    FILE_NOT_FOUND = "FILE002"
    FILE_READ = "FILE003"
    FILE_WRITE = "FILE004"

    # Configuration (CFG)
    CONFIG_GENERAL = "CFG001"
    CONFIG_PARSE = "CFG002"
    CONFIG_VALIDATION = "CFG003"

    # Dataset ingestion (DATA)
    DATA_GENERAL = "DATA001"
    DATA_SCHEMA = "DATA002"         # Missing or conflicting column roles
    DATA_PARSE = "DATA003"          # Unparseable cell
    DATA_DOMAIN = "DATA004"         # Value outside its allowed domain

    # Model files (MODEL)
    MODEL_GENERAL = "MODEL001"
    MODEL_PARSE = "MODEL002"
    MODEL_VERSION = "MODEL003"
    MODEL_SHAPE = "MODEL004"

    # Numerical failures (NUM)
    NUMERIC_GENERAL = "NUM001"
    NUMERIC_DIVERGED = "NUM002"     # Non-finite training loss
    NUMERIC_SEPARATION = "NUM003"   # Monotone partial likelihood
    NUMERIC_DEGENERATE = "NUM004"   # Covariate without variation
    NUMERIC_UNDEFINED = "NUM005"    # Metric not estimable
    NUMERIC_HORIZON = "NUM006"      # Prediction past the last interval

    # Validation (VAL)
    VALIDATION_GENERAL = "VAL001"
    VALIDATION_SHAPE = "VAL002"
    VALIDATION_RANGE = "VAL003"

    # State management (STATE)
    STATE_GENERAL = "STATE001"
    STATE_INVALID = "STATE002"

    @property
    def category(self) -> ErrorCategory:
        """Get the category for this error code."""
        return ErrorCategory(''.join(c for c in self.value if c.isalpha()))

@dataclass
class ErrorContext:
    """Detailed context information for errors.

    Attributes:
        operation: Name of the operation that failed
        error_code: Specific error code
        path: Optional file path related to the error
        details: Optional dictionary of additional details
    """
    operation: str
    error_code: ErrorCode
    path: Optional[Path] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def format_details(self) -> str:
        """Format error details for display."""
        parts = []
        if self.path:
            parts.append(f"path: {self.path}")
        if self.operation:
            parts.append(f"operation: {self.operation}")
        if self.details:
            parts.extend(f"{k}: {v}" for k, v in self.details.items())
        return " | ".join(parts)

class SurvnetError(Exception):
    """Base error for all survnet operations.

    Attributes:
        message: Error description
        context: Detailed error context
        original_error: Original exception if this wraps another error
    """
    default_code = ErrorCode.VALIDATION_GENERAL

    def __init__(
        self,
        message: str,
        *,
        context: Optional[ErrorContext] = None,
        operation: Optional[str] = None,
        path: Optional[Path] = None,
        details: Optional[Dict[str, Any]] = None,
        original_error: Optional[Exception] = None
    ):
        """Initialize error with context.

        Args:
            message: Error description
            context: Optional error context
            operation: Optional operation name (used if context not provided)
            path: Optional path (used if context not provided)
            details: Optional details merged into the context
            original_error: Optional original exception
        """
        super().__init__(message)
        self.message = message
        if context is None:
            context = ErrorContext(
                operation=operation or "unknown_operation",
                error_code=self.default_code,
                path=path
            )
        if details:
            context.details.update(details)
        self.context = context
        self.original_error = original_error

    @property
    def category(self) -> ErrorCategory:
        """Category of the error code carried by this error."""
        return self.context.error_code.category

    @property
    def exit_code(self) -> int:
        """Command-line exit status for this error."""
        return self.category.exit_code

    def __str__(self) -> str:
        """Format error message with context."""
        parts = [self.message]
        details = self.context.format_details()
        if details:
            parts.append(f"({details})")
        return " ".join(parts)

class ValidationError(SurvnetError):
    """Invalid argument passed to an operation."""
    default_code = ErrorCode.VALIDATION_GENERAL

class ConfigError(SurvnetError):
    """Error loading or validating configuration."""
    default_code = ErrorCode.CONFIG_GENERAL

class FileError(SurvnetError):
    """Error specific to file operations.

    Attributes:
        path: Path that caused the error
    """
    default_code = ErrorCode.FILE_GENERAL

    def __init__(self, message: str, *, path: Path, **kwargs: Any):
        """Initialize file error with required path.

        Args:
            message: Error description
            path: Path that caused the error
            **kwargs: Forwarded to SurvnetError
        """
        context = kwargs.pop("context", None)
        if context is not None:
            context.path = path
        super().__init__(message, context=context, path=path, **kwargs)
        self.path = path

class StateError(SurvnetError):
    """Operation attempted on an object in the wrong state.

    Attributes:
        current_state: The current state when the error occurred
        expected_state: The expected or target state
    """
    default_code = ErrorCode.STATE_INVALID

    def __init__(
        self,
        message: str,
        *,
        current_state: Optional[str] = None,
        expected_state: Optional[str] = None,
        **kwargs: Any
    ):
        details = {
            **(kwargs.pop("details", None) or {}),
            "current_state": current_state,
            "expected_state": expected_state
        }
        super().__init__(message, details=details, **kwargs)
        self.current_state = current_state
        self.expected_state = expected_state

class DataError(SurvnetError):
    """Dataset ingestion or schema violation.

    Attributes:
        row: 1-based data row of the offending cell, if known
        column: Column of the offending cell, if known
    """
    default_code = ErrorCode.DATA_GENERAL

    def __init__(
        self,
        message: str,
        *,
        row: Optional[int] = None,
        column: Optional[str] = None,
        **kwargs: Any
    ):
        details = dict(kwargs.pop("details", None) or {})
        if row is not None:
            details["row"] = row
        if column is not None:
            details["column"] = column
        super().__init__(message, details=details, **kwargs)
        self.row = row
        self.column = column

class ModelFormatError(SurvnetError):
    """Model file cannot be parsed or is internally inconsistent."""
    default_code = ErrorCode.MODEL_PARSE

class ModelVersionError(ModelFormatError):
    """Model file was written with an unsupported schema version."""
    default_code = ErrorCode.MODEL_VERSION

    def __init__(self, found: str, expected: str, **kwargs: Any):
        super().__init__(
            f"Unsupported model schema version {found!r} (expected {expected!r})",
            details={"found": found, "expected": expected},
            **kwargs
        )
        self.found = found
        self.expected = expected

class NumericalError(SurvnetError):
    """Base for numerical failures."""
    default_code = ErrorCode.NUMERIC_GENERAL

class TrainingDivergedError(NumericalError):
    """Training loss became non-finite."""
    default_code = ErrorCode.NUMERIC_DIVERGED

    def __init__(self, epoch: int, loss: float, **kwargs: Any):
        super().__init__(
            f"Training diverged at epoch {epoch} (loss={loss})",
            details={"epoch": epoch},
            **kwargs
        )
        self.epoch = epoch

class SeparationError(NumericalError):
    """Partial likelihood is monotone; coefficients run off to infinity."""
    default_code = ErrorCode.NUMERIC_SEPARATION

class DegenerateCovariateError(NumericalError):
    """A covariate carries no information (no variation)."""
    default_code = ErrorCode.NUMERIC_DEGENERATE

class UndefinedMetricError(NumericalError):
    """A metric cannot be estimated from the supplied data."""
    default_code = ErrorCode.NUMERIC_UNDEFINED

class OutOfHorizonError(NumericalError):
    """Survival requested past the end of the last time interval."""
    default_code = ErrorCode.NUMERIC_HORIZON

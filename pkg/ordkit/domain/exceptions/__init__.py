"""
Domain Exceptions - Custom exception hierarchy for domain errors.

These exceptions are raised by services and should be handled gracefully
by the presentation layer (the CLI maps them to exit codes).
"""

from typing import Iterable, Optional, Tuple


class DomainException(Exception):
    """Base exception for all domain-level errors."""

    def __init__(self, message: str, code: str = "DOMAIN_ERROR"):
        """Initialize domain exception.

        Args:
            message: Human-readable error message
            code: Machine-readable error code (e.g., "PARSE_ERROR")
        """
        super().__init__(message)
        self.message = message
        self.code = code

    def __str__(self) -> str:
        return f"[{self.code}] {self.message}"


class ValidationError(DomainException):
    """Raised when a term or formula breaks a structural invariant."""

    def __init__(
        self, message: str, field: Optional[str] = None, value: Optional[str] = None
    ):
        """Initialize validation error.

        Args:
            message: Error description
            field: The invariant (clause name) that failed (optional)
            value: Rendered offending subterm (optional)
        """
        super().__init__(message, code="VALIDATION_ERROR")
        self.field = field
        self.value = value


class ConfigurationError(DomainException):
    """Raised when configuration is invalid."""

    def __init__(self, message: str, key: Optional[str] = None):
        """Initialize configuration error.

        Args:
            message: Error description
            key: The configuration key that caused the error (optional)
        """
        super().__init__(message, code="CONFIG_ERROR")
        self.key = key


class ParseError(DomainException):
    """Raised when source text cannot be turned into a term or formula."""

    def __init__(
        self,
        message: str,
        line: int = 1,
        column: int = 1,
        expected: Iterable[str] = (),
    ):
        """Initialize parse error.

        Args:
            message: Error description
            line: 1-based line of the offending token
            column: 1-based column of the offending token
            expected: Token kinds that would have been accepted
        """
        self.line = line
        self.column = column
        self.expected: Tuple[str, ...] = tuple(sorted(set(expected)))
        detail = f"{message} at {line}:{column}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail, code="PARSE_ERROR")
        self.reason = message


class IncomparableSubscript(DomainException):
    """Raised when two collapse terms with different subscripts cannot be ordered."""

    def __init__(self, left: str, right: str):
        message = f"Cannot compare '{left}' with '{right}': subscripts differ"
        super().__init__(message, code="INCOMPARABLE_SUBSCRIPT")
        self.left = left
        self.right = right


class SizeLimitExceeded(DomainException):
    """Raised when an enumeration pool grows past the configured cap."""

    def __init__(self, pool_size: int, cap: int):
        message = f"Candidate pool of {pool_size} terms exceeds cap {cap}"
        super().__init__(message, code="SIZE_LIMIT_EXCEEDED")
        self.pool_size = pool_size
        self.cap = cap


class CeilingExceeded(DomainException):
    """Raised when a result reaches the configured tower ceiling."""

    def __init__(self, term: str, max_tower: int):
        message = f"'{term}' is not below the tower ceiling of height {max_tower}"
        super().__init__(message, code="CEILING_EXCEEDED")
        self.term = term
        self.max_tower = max_tower


class NotACollapse(DomainException):
    """Raised when a collapse-only operation receives another term."""

    def __init__(self, term: str):
        super().__init__(f"'{term}' is not a collapse term", code="NOT_A_COLLAPSE")
        self.term = term


class LengthMismatch(DomainException):
    """Raised when two sequences must have equal length and do not."""

    def __init__(self, left: int, right: int):
        message = f"Sequence lengths differ: {left} != {right}"
        super().__init__(message, code="LENGTH_MISMATCH")
        self.left = left
        self.right = right


class NotComponentwiseLess(DomainException):
    """Raised when a sequence is not strictly below another in some slot."""

    def __init__(self, index: int):
        message = f"Component {index} is not strictly smaller"
        super().__init__(message, code="NOT_COMPONENTWISE_LESS")
        self.index = index


class IndexOutOfRange(DomainException):
    """Raised when a sequence index falls outside its valid range."""

    def __init__(self, index: int, length: int):
        message = f"Index {index} out of range for sequence of length {length}"
        super().__init__(message, code="INDEX_OUT_OF_RANGE")
        self.index = index
        self.length = length


class ShapeMismatch(DomainException):
    """Raised when a bound state does not have the shape a transformer needs."""

    def __init__(self, expected: str, actual: str):
        message = f"Expected {expected}, got {actual}"
        super().__init__(message, code="SHAPE_MISMATCH")
        self.expected = expected
        self.actual = actual


class InvalidRegular(DomainException):
    """Raised when a term used as a regular cardinal is not designated."""

    def __init__(self, term: str):
        super().__init__(f"'{term}' is not a designated regular", code="INVALID_REGULAR")
        self.term = term


class TheoryFloor(DomainException):
    """Raised when lowering is attempted at theory level zero or below."""

    def __init__(self, theory: int):
        super().__init__(f"Cannot lower theory level {theory}", code="THEORY_FLOOR")
        self.theory = theory


class BoundViolated(DomainException):
    """Raised when an ordinal annotation exceeds the bound a step requires."""

    def __init__(self, what: str, actual: str, bound: str):
        message = f"{what} '{actual}' exceeds '{bound}'"
        super().__init__(message, code="BOUND_VIOLATED")
        self.what = what
        self.actual = actual
        self.bound = bound


class NotRelativizable(DomainException):
    """Raised when a formula cannot be relativized to a smaller regular."""

    def __init__(self, reason: str):
        super().__init__(f"Cannot relativize: {reason}", code="NOT_RELATIVIZABLE")
        self.reason = reason


class UndecidableLiteral(DomainException):
    """Raised when a literal's truth needs set semantics."""

    def __init__(self, literal: str):
        message = f"Truth of '{literal}' is not decidable on terms"
        super().__init__(message, code="UNDECIDABLE_LITERAL")
        self.literal = literal


class PropertyViolation(DomainException):
    """Raised when a property suite reports failures."""

    def __init__(self, suite: str, failures: int):
        message = f"Suite '{suite}' reported {failures} failure(s)"
        super().__init__(message, code="PROPERTY_VIOLATION")
        self.suite = suite
        self.failures = failures

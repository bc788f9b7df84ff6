"""Standardized error handling and exception definitions.

This module provides consistent error handling patterns and exception
definitions used throughout the qpartitions library, CLI and tool server.

Every failure a caller can trigger (malformed partitions, constraint sets
without a finiteness certificate, non-unit series inversions, coefficient
overflow, unknown registry names) maps onto one exception class with a
stable numeric code, so the CLI can pick an exit status and the tool server
can return a structured payload instead of a traceback.
"""

import logging
from enum import Enum
from typing import Any

logger = logging.getLogger(__name__)


class ErrorCode(Enum):
    """Standardized error codes for programmatic error handling."""

    # Validation errors (1000-1999)
    VALIDATION_ERROR = 1000
    PARTITION_VALIDATION_ERROR = 1001
    CONSTRAINT_VALIDATION_ERROR = 1002
    PARAMETER_VALIDATION_ERROR = 1003
    DOMAIN_ERROR = 1004

    # Resource errors (2000-2999)
    RESOURCE_LIMIT_ERROR = 2000
    COEFFICIENT_OVERFLOW_ERROR = 2001
    ORDER_LIMIT_ERROR = 2002

    # Computation errors (3000-3999)
    COMPUTATION_ERROR = 3000
    NON_FINITE_STATISTIC_ERROR = 3001
    NON_UNIT_INVERSE_ERROR = 3002
    TRUNCATION_ERROR = 3003

    # Registry errors (4000-4999)
    REGISTRY_ERROR = 4000
    UNKNOWN_IDENTITY_ERROR = 4001
    UNKNOWN_FORM_ERROR = 4002
    UNKNOWN_PRESET_ERROR = 4003

    # System errors (5000-5999)
    SYSTEM_ERROR = 5000
    CONFIGURATION_ERROR = 5001


class BaseQPartitionsError(Exception):
    """Base exception class for all qpartitions errors.

    Provides consistent error handling with context preservation,
    error codes, and recovery information.
    """

    def __init__(
        self,
        message: str,
        error_code: ErrorCode,
        context: dict[str, Any] | None = None,
        recovery_suggestion: str | None = None,
        user_message: str | None = None,
    ):
        """Initialize base error with context and recovery information.

        Args:
            message: Technical error message for developers
            error_code: Standardized error code
            context: Additional context data for debugging
            recovery_suggestion: Suggestion for error recovery
            user_message: User-friendly error message
        """
        super().__init__(message)
        self.error_code = error_code
        self.context = context or {}
        self.recovery_suggestion = recovery_suggestion
        self.user_message = user_message or message

        self.context.update(
            {
                "error_code": error_code.value,
                "error_name": error_code.name,
                "exception_type": self.__class__.__name__,
            },
        )

    def to_dict(self) -> dict[str, Any]:
        """Convert error to dictionary for serialization."""
        return {
            "error": True,
            "error_code": self.error_code.value,
            "error_name": self.error_code.name,
            "message": str(self),
            "user_message": self.user_message,
            "recovery_suggestion": self.recovery_suggestion,
            "context": self.context,
            "exception_type": self.__class__.__name__,
        }

    def log_error(self, logger_instance: logging.Logger | None = None) -> None:
        """Log error with full context."""
        log = logger_instance or logger
        log.error(
            f"{self.__class__.__name__}: {self}",
            extra={
                "error_code": self.error_code.value,
                "context": self.context,
                "recovery_suggestion": self.recovery_suggestion,
            },
            exc_info=True,
        )


class ValidationError(BaseQPartitionsError, ValueError):
    """Base class for validation errors.

    Also a ``ValueError`` so plain ``except ValueError`` call sites keep working.
    """

    def __init__(
        self,
        message: str,
        context: dict[str, Any] | None = None,
        field_name: str | None = None,
        field_value: Any = None,
    ):
        super().__init__(
            message=message,
            error_code=ErrorCode.VALIDATION_ERROR,
            context=context,
            recovery_suggestion="Check input parameters and try again",
        )

        if field_name:
            self.context["field_name"] = field_name
        if field_value is not None:
            self.context["field_value"] = str(field_value)


class PartitionValidationError(ValidationError):
    """Raised when a sequence is not a partition (increasing run, zero, negative)."""

    def __init__(
        self,
        message: str,
        context: dict[str, Any] | None = None,
        values: list[int] | tuple[int, ...] | None = None,
    ):
        super().__init__(message, context)
        self.error_code = ErrorCode.PARTITION_VALIDATION_ERROR
        self.recovery_suggestion = (
            "Give positive integers in weakly decreasing order, e.g. 4,4,2,1,1"
        )

        if values is not None:
            self.context["values"] = list(values)


class ConstraintValidationError(ValidationError):
    """Raised when a constraint set is malformed."""

    def __init__(
        self,
        message: str,
        context: dict[str, Any] | None = None,
        spec: dict[str, Any] | None = None,
    ):
        super().__init__(message, context)
        self.error_code = ErrorCode.CONSTRAINT_VALIDATION_ERROR
        self.recovery_suggestion = "Use a preset name or a JSON object of constraint fields"

        if spec:
            self.context["spec"] = spec


class ParameterValidationError(ValidationError):
    """Raised when an operation parameter is out of range."""

    def __init__(
        self,
        message: str,
        context: dict[str, Any] | None = None,
        parameter: str | None = None,
        value: Any = None,
    ):
        super().__init__(message, context, field_name=parameter, field_value=value)
        self.error_code = ErrorCode.PARAMETER_VALIDATION_ERROR


class DomainError(ValidationError):
    """Raised in strict mode when a weight is evaluated outside its domain."""

    def __init__(
        self,
        message: str,
        context: dict[str, Any] | None = None,
    ):
        super().__init__(message, context)
        self.error_code = ErrorCode.DOMAIN_ERROR
        self.recovery_suggestion = (
            "Filter with member() first or disable QPARTITIONS_STRICT_MODE"
        )


class ResourceLimitError(BaseQPartitionsError):
    """Raised when resource limits are exceeded."""

    def __init__(
        self,
        message: str,
        context: dict[str, Any] | None = None,
        limit_type: str | None = None,
        current_value: float | None = None,
        limit_value: float | None = None,
    ):
        super().__init__(
            message=message,
            error_code=ErrorCode.RESOURCE_LIMIT_ERROR,
            context=context,
            recovery_suggestion="Reduce the requested order or raise the limit",
            user_message="Request exceeds configured limits",
        )

        if limit_type:
            self.context["limit_type"] = limit_type
        if current_value is not None:
            self.context["current_value"] = current_value
        if limit_value is not None:
            self.context["limit_value"] = limit_value


class CoefficientOverflowError(ResourceLimitError):
    """Raised when a coefficient no longer fits the configured bit width."""

    def __init__(
        self,
        message: str,
        context: dict[str, Any] | None = None,
        bits: int | None = None,
    ):
        super().__init__(message, context, limit_type="coefficient_bits", limit_value=bits)
        self.error_code = ErrorCode.COEFFICIENT_OVERFLOW_ERROR
        self.recovery_suggestion = "Raise QPARTITIONS_COEFF_BITS or lower the order"


class OrderLimitError(ResourceLimitError):
    """Raised when a requested truncation order exceeds QPARTITIONS_MAX_ORDER."""

    def __init__(
        self,
        message: str,
        context: dict[str, Any] | None = None,
        order: int | None = None,
        max_order: int | None = None,
    ):
        super().__init__(
            message,
            context,
            limit_type="order",
            current_value=order,
            limit_value=max_order,
        )
        self.error_code = ErrorCode.ORDER_LIMIT_ERROR


class ComputationError(BaseQPartitionsError):
    """Base class for computation errors."""

    def __init__(
        self,
        message: str,
        context: dict[str, Any] | None = None,
        operation: str | None = None,
    ):
        super().__init__(
            message=message,
            error_code=ErrorCode.COMPUTATION_ERROR,
            context=context,
            recovery_suggestion="Check the operation's preconditions",
        )

        if operation:
            self.context["operation"] = operation


class NonFiniteStatisticError(ComputationError):
    """Raised when a (set, statistic) pair has no finiteness certificate.

    Example: every partition (lambda_2 + i, lambda_2, ...) has the same
    even-indexed sum, so the unrestricted set has infinitely many members
    per value of that statistic.
    """

    def __init__(
        self,
        message: str,
        context: dict[str, Any] | None = None,
        statistic: str | None = None,
    ):
        super().__init__(message, context, operation="enumerate_by_statistic")
        self.error_code = ErrorCode.NON_FINITE_STATISTIC_ERROR
        self.recovery_suggestion = (
            "Use norm, o or o-conj, or bound the gaps and the smallest part"
        )

        if statistic:
            self.context["statistic"] = statistic


class NonUnitInverseError(ComputationError):
    """Raised when inverting a series whose constant term is not +1 or -1."""

    def __init__(
        self,
        message: str,
        context: dict[str, Any] | None = None,
        constant_term: int | None = None,
    ):
        super().__init__(message, context, operation="inverse")
        self.error_code = ErrorCode.NON_UNIT_INVERSE_ERROR
        self.recovery_suggestion = "Only series with constant term +1 or -1 are invertible"

        if constant_term is not None:
            self.context["constant_term"] = constant_term


class TruncationError(ComputationError):
    """Raised when a result is requested beyond the order it is exact to."""

    def __init__(
        self,
        message: str,
        context: dict[str, Any] | None = None,
        requested: int | None = None,
        valid: int | None = None,
    ):
        super().__init__(message, context, operation="truncation")
        self.error_code = ErrorCode.TRUNCATION_ERROR
        self.recovery_suggestion = "Expand the source series to a higher order first"

        if requested is not None:
            self.context["requested_order"] = requested
        if valid is not None:
            self.context["valid_order"] = valid


class RegistryError(BaseQPartitionsError):
    """Base class for unknown names in the presets, forms and identity registry."""

    def __init__(
        self,
        message: str,
        context: dict[str, Any] | None = None,
        name: str | None = None,
        available: list[str] | None = None,
    ):
        super().__init__(
            message=message,
            error_code=ErrorCode.REGISTRY_ERROR,
            context=context,
            recovery_suggestion="List the available names and pick one",
        )

        if name:
            self.context["name"] = name
        if available:
            self.context["available"] = available


class UnknownIdentityError(RegistryError):
    """Raised when an identity id is not registered."""

    def __init__(self, message: str, **kwargs: Any):
        super().__init__(message, **kwargs)
        self.error_code = ErrorCode.UNKNOWN_IDENTITY_ERROR


class UnknownFormError(RegistryError):
    """Raised when a product or sum form name is unknown."""

    def __init__(self, message: str, **kwargs: Any):
        super().__init__(message, **kwargs)
        self.error_code = ErrorCode.UNKNOWN_FORM_ERROR


class UnknownPresetError(RegistryError):
    """Raised when a constraint preset name is unknown."""

    def __init__(self, message: str, **kwargs: Any):
        super().__init__(message, **kwargs)
        self.error_code = ErrorCode.UNKNOWN_PRESET_ERROR


def handle_strict_validation(
    condition: bool,
    error_message: str,
    exception_class: type[BaseQPartitionsError],
    strict: bool = True,
    context: dict[str, Any] | None = None,
) -> bool:
    """Handle validation with strict/non-strict modes.

    Args:
        condition: Validation condition (True = valid)
        error_message: Error message if validation fails
        exception_class: Exception to raise in strict mode
        strict: Whether to raise exception or just log
        context: Additional context for exception

    Returns:
        True if validation passed, False if failed in non-strict mode

    Raises:
        exception_class: If validation fails and strict=True
    """
    if condition:
        return True

    if strict:
        raise exception_class(error_message, context=context)
    logger.warning(f"Validation failed (non-strict): {error_message}")
    return False


def create_error_response(
    error: BaseQPartitionsError | Exception | str,
    success: bool = False,
    **additional_data: Any,
) -> dict[str, Any]:
    """Create standardized error response dictionary.

    Args:
        error: Error object, exception, or error message
        success: Success flag (usually False for errors)
        **additional_data: Additional response data

    Returns:
        Standardized error response dictionary
    """
    if isinstance(error, BaseQPartitionsError):
        response = error.to_dict()
        response["success"] = success
        response.update(additional_data)
        return response
    if isinstance(error, Exception):
        return {
            "success": success,
            "error": True,
            "message": str(error),
            "exception_type": type(error).__name__,
            **additional_data,
        }
    return {
        "success": success,
        "error": True,
        "message": str(error),
        **additional_data,
    }


# Exception mapping for consistent error conversion
EXCEPTION_MAPPING = {
    ValueError: ValidationError,
    TypeError: ValidationError,
    OverflowError: ResourceLimitError,
    RecursionError: ResourceLimitError,
}


def convert_exception(
    original_error: Exception,
    context_message: str | None = None,
    additional_context: dict[str, Any] | None = None,
) -> BaseQPartitionsError:
    """Convert standard exceptions to qpartitions exceptions.

    Args:
        original_error: Original exception to convert
        context_message: Additional context message
        additional_context: Additional context data

    Returns:
        Converted qpartitions exception
    """
    if isinstance(original_error, BaseQPartitionsError):
        return original_error

    message = (
        f"{context_message}: {original_error}" if context_message else str(original_error)
    )

    for error_type, new_exception_class in EXCEPTION_MAPPING.items():
        if isinstance(original_error, error_type):
            return new_exception_class(message, context=additional_context)

    return ComputationError(message, context=additional_context)

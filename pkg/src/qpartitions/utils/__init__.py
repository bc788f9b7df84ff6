"""Utility modules organized by functionality.

This package contains utility functions organized into focused modules:
- logging_utils: Logging with structured context
- timing_utils: Timing decorator for expensive builders
- validation_utils: Argument validation and parsing
"""

from .logging_utils import (
    configure_logging,
    log_error_with_context,
    log_performance,
    log_with_context,
)
from .timing_utils import timed_operation
from .validation_utils import (
    parse_int_list,
    parse_params,
    validate_numeric_range,
    validate_string_input,
)

__all__ = [
    # Logging utilities
    "configure_logging",
    "log_with_context",
    "log_error_with_context",
    "log_performance",
    # Timing utilities
    "timed_operation",
    # Validation utilities
    "validate_string_input",
    "validate_numeric_range",
    "parse_int_list",
    "parse_params",
]

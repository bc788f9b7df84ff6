"""Configuration management and validation for qpartitions.

This module handles environment variable validation and provides
configuration defaults for the library, the CLI and the tool server.
"""

import logging
import os
from typing import Any

logger = logging.getLogger(__name__)


class ConfigurationError(Exception):
    """Raised when configuration validation fails."""

    pass


_TRUE_VALUES = ("true", "1", "yes", "on")
_FALSE_VALUES = ("false", "0", "no", "off")


def _read_int(
    name: str,
    default: int,
    minimum: int,
    maximum: int,
    errors: list[str],
) -> int | None:
    raw = os.getenv(name, str(default))
    try:
        value = int(raw)
    except ValueError:
        errors.append(f"{name} must be an integer, got: {raw}")
        return None
    if value < minimum:
        errors.append(f"{name} must be at least {minimum}")
        return None
    if value > maximum:
        errors.append(f"{name} must be at most {maximum}")
        return None
    return value


def validate_environment_variables() -> dict[str, Any]:
    """Validate all environment variables and return validated configuration.

    Returns:
        Dictionary with validated configuration values

    Raises:
        ConfigurationError: If any environment variable has an invalid value
    """
    config: dict[str, Any] = {}
    errors: list[str] = []

    # Validate QPARTITIONS_LOG_LEVEL
    log_level = os.getenv("QPARTITIONS_LOG_LEVEL", "INFO").upper()
    valid_levels = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
    if log_level not in valid_levels:
        errors.append(
            f"QPARTITIONS_LOG_LEVEL must be one of {sorted(valid_levels)}, got: {log_level}",
        )
    else:
        config["QPARTITIONS_LOG_LEVEL"] = log_level

    # Validate QPARTITIONS_MAX_ORDER first, the default order is checked against it
    max_order = _read_int("QPARTITIONS_MAX_ORDER", 200, 1, 2000, errors)
    if max_order is not None:
        config["QPARTITIONS_MAX_ORDER"] = max_order

    default_order = _read_int(
        "QPARTITIONS_DEFAULT_ORDER",
        40,
        0,
        max_order if max_order is not None else 2000,
        errors,
    )
    if default_order is not None:
        config["QPARTITIONS_DEFAULT_ORDER"] = default_order

    # Signed width every coefficient has to fit in; 64 is the floor
    coeff_bits = _read_int("QPARTITIONS_COEFF_BITS", 64, 64, 1048576, errors)
    if coeff_bits is not None:
        config["QPARTITIONS_COEFF_BITS"] = coeff_bits

    workers = _read_int("QPARTITIONS_WORKERS", 1, 1, 64, errors)
    if workers is not None:
        config["QPARTITIONS_WORKERS"] = workers

    multivariate_order = _read_int("QPARTITIONS_MULTIVARIATE_ORDER", 20, 0, 40, errors)
    if multivariate_order is not None:
        config["QPARTITIONS_MULTIVARIATE_ORDER"] = multivariate_order

    # Validate QPARTITIONS_STRICT_MODE
    strict_mode_str = os.getenv("QPARTITIONS_STRICT_MODE", "false").lower()
    if strict_mode_str in _TRUE_VALUES:
        config["QPARTITIONS_STRICT_MODE"] = True
    elif strict_mode_str in _FALSE_VALUES:
        config["QPARTITIONS_STRICT_MODE"] = False
    else:
        errors.append(
            f"QPARTITIONS_STRICT_MODE must be true/false, got: {strict_mode_str}",
        )

    if errors:
        error_msg = "Configuration validation failed:\n" + "\n".join(
            f"  - {error}" for error in errors
        )
        raise ConfigurationError(error_msg)

    return config


def get_validated_config() -> dict[str, Any]:
    """Get validated configuration with helpful error messages.

    Returns:
        Dictionary with validated configuration values

    Raises:
        ConfigurationError: If validation fails with detailed error message
    """
    try:
        return validate_environment_variables()
    except ConfigurationError as e:
        logger.error(f"Configuration error: {e}")
        raise


def validate_config_on_startup() -> None:
    """Validate configuration on startup and log results.

    Called by the CLI and the tool server before any work so that a bad
    environment fails fast with every problem listed at once.
    """
    try:
        config = get_validated_config()
        logger.info("Configuration validation passed")
        logger.debug(f"Active configuration: {config}")
    except ConfigurationError as e:
        logger.error(f"Configuration validation failed: {e}")
        logger.error("Please check your environment variables and try again")
        raise


def get_config_summary() -> str:
    """Get a human-readable summary of current configuration.

    Returns:
        Formatted string with configuration summary
    """
    try:
        config = get_validated_config()

        summary_lines = [
            "Configuration Summary:",
            f"  • Log Level: {config['QPARTITIONS_LOG_LEVEL']}",
            f"  • Default Order: {config['QPARTITIONS_DEFAULT_ORDER']}",
            f"  • Max Order: {config['QPARTITIONS_MAX_ORDER']}",
            f"  • Coefficient Width: {config['QPARTITIONS_COEFF_BITS']} bits (signed)",
            f"  • Verification Workers: {config['QPARTITIONS_WORKERS']}",
            f"  • Four-variable Degree Cap: {config['QPARTITIONS_MULTIVARIATE_ORDER']}",
            f"  • Weight Domain Checks: {'Strict (raise)' if config['QPARTITIONS_STRICT_MODE'] else 'Permissive (warn)'}",
        ]

        return "\n".join(summary_lines)

    except ConfigurationError as e:
        return f"Configuration Error: {e}"


def get_log_level() -> str:
    """Get validated QPARTITIONS_LOG_LEVEL value."""
    return get_validated_config()["QPARTITIONS_LOG_LEVEL"]


def get_default_order() -> int:
    """Get validated QPARTITIONS_DEFAULT_ORDER value."""
    return get_validated_config()["QPARTITIONS_DEFAULT_ORDER"]


def get_max_order() -> int:
    """Get validated QPARTITIONS_MAX_ORDER value."""
    return get_validated_config()["QPARTITIONS_MAX_ORDER"]


def get_coefficient_bits() -> int:
    """Get validated QPARTITIONS_COEFF_BITS value."""
    return get_validated_config()["QPARTITIONS_COEFF_BITS"]


def get_worker_count() -> int:
    """Get validated QPARTITIONS_WORKERS value."""
    return get_validated_config()["QPARTITIONS_WORKERS"]


def get_multivariate_order() -> int:
    """Get validated QPARTITIONS_MULTIVARIATE_ORDER value."""
    return get_validated_config()["QPARTITIONS_MULTIVARIATE_ORDER"]


def is_strict_mode() -> bool:
    """Get validated QPARTITIONS_STRICT_MODE value."""
    return get_validated_config()["QPARTITIONS_STRICT_MODE"]

"""Input validation and parsing utilities for CLI and tool arguments."""

from typing import Any


def validate_string_input(
    value: Any,
    name: str,
    allow_empty: bool = False,
    max_length: int | None = None,
) -> str:
    """Validate string input with consistent error messages.

    Args:
        value: Value to validate
        name: Name of the parameter for error messages
        allow_empty: Whether to allow empty strings
        max_length: Maximum allowed length

    Returns:
        Validated string

    Raises:
        ValueError: If validation fails
    """
    if not isinstance(value, str):
        raise ValueError(f"{name} must be a string, got {type(value).__name__}")

    if not allow_empty and not value:
        raise ValueError(f"{name} cannot be empty")

    if max_length is not None and len(value) > max_length:
        raise ValueError(
            f"{name} too long: {len(value)} characters (max: {max_length})",
        )

    return value


def validate_numeric_range(
    value: Any,
    name: str,
    min_value: int | None = None,
    max_value: int | None = None,
) -> int:
    """Validate an integer against optional bounds.

    Args:
        value: Value to validate
        name: Name of the parameter for error messages
        min_value: Minimum allowed value (inclusive)
        max_value: Maximum allowed value (inclusive)

    Returns:
        Validated integer

    Raises:
        ValueError: If validation fails
    """
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"{name} must be an integer, got {type(value).__name__}")

    if min_value is not None and value < min_value:
        raise ValueError(f"{name} must be >= {min_value}, got {value}")

    if max_value is not None and value > max_value:
        raise ValueError(f"{name} must be <= {max_value}, got {value}")

    return value


def parse_int_list(text: str, name: str = "value") -> list[int]:
    """Parse a comma-separated list of integers such as ``4,4,2,1,1``.

    An empty string (or only whitespace) parses to an empty list.

    Raises:
        ValueError: If any item is not an integer
    """
    validate_string_input(text, name, allow_empty=True)
    items = [item.strip() for item in text.split(",")]
    if items == [""]:
        return []
    try:
        return [int(item) for item in items]
    except ValueError as e:
        raise ValueError(f"{name} must be comma-separated integers, got: {text!r}") from e


def parse_params(text: str | None) -> dict[str, int]:
    """Parse ``k=1,m=2,M=3`` into ``{"k": 1, "m": 2, "M": 3}``.

    Keys are case-sensitive (``M`` and ``m`` differ).

    Raises:
        ValueError: On a malformed pair or non-integer value
    """
    if text is None or not text.strip():
        return {}
    params: dict[str, int] = {}
    for pair in text.split(","):
        if "=" not in pair:
            raise ValueError(f"parameter must look like key=value, got: {pair!r}")
        key, raw = (part.strip() for part in pair.split("=", 1))
        if not key:
            raise ValueError(f"parameter name missing in: {pair!r}")
        try:
            params[key] = int(raw)
        except ValueError as e:
            raise ValueError(f"parameter {key} must be an integer, got: {raw!r}") from e
    return params

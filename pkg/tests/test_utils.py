"""Tests for the common utilities module."""

import logging

import pytest

from src.qpartitions.utils import (
    configure_logging,
    log_error_with_context,
    log_performance,
    log_with_context,
    parse_int_list,
    parse_params,
    timed_operation,
    validate_numeric_range,
    validate_string_input,
)
from src.qpartitions.utils.logging_utils import PACKAGE_LOGGER


class TestLoggingUtilities:
    """Test logging utility functions."""

    def test_log_with_context(self, caplog):
        """Test logging with context."""
        with caplog.at_level(logging.INFO):
            log_with_context(
                level="info",
                message="Test message",
                operation="verify",
                identity="euler",
            )

        assert "Test message" in caplog.text
        assert caplog.records[-1].identity == "euler"
        assert caplog.records[-1].operation == "verify"

    def test_log_with_context_no_context(self, caplog):
        """Test logging without context."""
        with caplog.at_level(logging.INFO):
            log_with_context(level="info", message="Simple message")

        assert "Simple message" in caplog.text

    def test_log_error_with_context(self, caplog):
        """Test error logging with exception details."""
        with caplog.at_level(logging.ERROR):
            log_error_with_context(ValueError("boom"), "Expansion failed", operation="expand")

        record = caplog.records[-1]
        assert record.error_type == "ValueError"
        assert record.error_message == "boom"

    def test_log_performance(self, caplog):
        """Test performance logging."""
        with caplog.at_level(logging.DEBUG):
            log_performance("tally", 0.5, order=20)

        record = caplog.records[-1]
        assert "Performance: tally completed" in record.getMessage()
        assert record.duration_ms == 500.0
        assert record.order == 20


class TestConfigureLogging:
    """Test the package logger setup used by the CLI."""

    def teardown_method(self):
        package_logger = logging.getLogger(PACKAGE_LOGGER)
        for handler in list(package_logger.handlers):
            package_logger.removeHandler(handler)
        package_logger.setLevel(logging.NOTSET)

    def test_single_handler(self):
        """Test that repeated calls do not duplicate handlers."""
        configure_logging("debug")
        configure_logging("warning")

        package_logger = logging.getLogger(PACKAGE_LOGGER)
        assert len(package_logger.handlers) == 1
        assert package_logger.level == logging.WARNING

    def test_package_logger_name(self):
        """Test that the handler sits on the package root logger."""
        assert PACKAGE_LOGGER.endswith("qpartitions")


class TestTimingUtilities:
    """Test the timing decorator."""

    def test_timed_operation_success(self, caplog):
        """Test timing a successful call."""

        @timed_operation("square")
        def square(x):
            return x * x

        with caplog.at_level(logging.DEBUG):
            assert square(7) == 49

        assert "Performance: square completed" in caplog.text

    def test_timed_operation_default_name(self, caplog):
        """Test that the function name is used by default."""

        @timed_operation()
        def build_series():
            return 1

        with caplog.at_level(logging.DEBUG):
            build_series()

        assert "build_series" in caplog.text
        assert build_series.__name__ == "build_series"

    def test_timed_operation_failure(self, caplog):
        """Test that failures are logged and re-raised."""

        @timed_operation("explode")
        def explode():
            raise RuntimeError("boom")

        with caplog.at_level(logging.ERROR):
            with pytest.raises(RuntimeError):
                explode()

        assert "Timed operation explode failed" in caplog.text


class TestValidationUtilities:
    """Test validation utility functions."""

    def test_validate_string_input_valid(self):
        """Test valid string input."""
        assert validate_string_input("euler", "form") == "euler"
        assert validate_string_input("", "form", allow_empty=True) == ""

    def test_validate_string_input_invalid(self):
        """Test invalid string input."""
        with pytest.raises(ValueError, match="must be a string"):
            validate_string_input(123, "form")

        with pytest.raises(ValueError, match="cannot be empty"):
            validate_string_input("", "form")

        with pytest.raises(ValueError, match="too long"):
            validate_string_input("rogers", "form", max_length=3)

    def test_validate_numeric_range_valid(self):
        """Test valid numeric range."""
        assert validate_numeric_range(5, "order", min_value=0, max_value=10) == 5
        assert validate_numeric_range(0, "order", min_value=0) == 0

    def test_validate_numeric_range_invalid(self):
        """Test invalid numeric range."""
        with pytest.raises(ValueError, match="must be >= 0"):
            validate_numeric_range(-1, "order", min_value=0)

        with pytest.raises(ValueError, match="must be <= 10"):
            validate_numeric_range(11, "order", max_value=10)

        with pytest.raises(ValueError, match="must be an integer"):
            validate_numeric_range(2.5, "order")

        with pytest.raises(ValueError, match="must be an integer"):
            validate_numeric_range(True, "order")

    def test_parse_int_list(self):
        """Test parsing comma-separated integers."""
        assert parse_int_list("4,4,2,1,1") == [4, 4, 2, 1, 1]
        assert parse_int_list(" 3 , 1 ") == [3, 1]
        assert parse_int_list("") == []
        assert parse_int_list("   ") == []

        with pytest.raises(ValueError, match="comma-separated integers"):
            parse_int_list("4,x")

    def test_parse_params(self):
        """Test parsing key=value parameter lists."""
        assert parse_params("M=3,k=1,m=2") == {"M": 3, "k": 1, "m": 2}
        assert parse_params(None) == {}
        assert parse_params(" ") == {}

        with pytest.raises(ValueError, match="key=value"):
            parse_params("M3")

        with pytest.raises(ValueError, match="must be an integer"):
            parse_params("M=x")

        with pytest.raises(ValueError, match="name missing"):
            parse_params("=3")

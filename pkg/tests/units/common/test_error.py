"""Unit tests for the structured error registry and KahlerError."""
import logging
from unittest.mock import MagicMock

import pytest

from kahler_lattice.common.error import (
    ERROR_REGISTRY,
    EXIT_DATA,
    EXIT_SOFTWARE,
    EXIT_USAGE,
    Category,
    Code,
    KahlerError,
)


class TestRegistry:
    """Every code has a registry entry with a sysexits status."""

    def test_every_code_registered(self):
        assert set(ERROR_REGISTRY) == {c.value for c in Code}

    @pytest.mark.parametrize("code, status", [
        (Code.E0101, EXIT_DATA),
        (Code.E0302, EXIT_DATA),
        (Code.E0601, EXIT_DATA),
        (Code.E0801, EXIT_USAGE),
        (Code.E0802, EXIT_DATA),
        (Code.X0202, EXIT_SOFTWARE),
        (Code.X0403, EXIT_SOFTWARE),
        (Code.X0803, EXIT_SOFTWARE),
    ])
    def test_status_by_code(self, code, status):
        assert KahlerError(code).status_code == status

    def test_internal_codes_exit_70(self):
        for value, spec in ERROR_REGISTRY.items():
            if value.startswith("X"):
                assert spec.default_status == EXIT_SOFTWARE

    def test_warning_is_flagged(self):
        assert KahlerError(Code.W0602).is_warning
        assert not KahlerError(Code.E0601).is_warning


class TestKahlerError:
    def test_default_message_and_category(self):
        err = KahlerError(Code.E0102)
        assert err.category is Category.LATTICE
        assert "odd" in err.message
        assert str(err).startswith("E0102: ")

    def test_message_override_and_details(self):
        err = KahlerError("E0302", message="Walls up to degree 9", details={"required": 9, "bound": 4})
        assert err.code is Code.E0302
        assert err.message == "Walls up to degree 9"
        assert err.details == {"required": 9, "bound": 4}

    def test_cause_is_chained(self):
        cause = ValueError("bad")
        assert KahlerError(Code.E0802, cause=cause).__cause__ is cause

    def test_payload_shape(self):
        payload = KahlerError(Code.E0501, details="too many curves").to_payload(include_status=True)
        assert payload["type"] == "kahler:spec"
        assert payload["code"] == "E0501"
        assert payload["status"] == EXIT_DATA
        assert payload["details"] == "too many curves"

    def test_payload_without_status(self):
        assert KahlerError(Code.E0501).to_payload()["status"] is None

    def test_log_uses_error_level(self):
        logger = MagicMock()
        KahlerError(Code.E0601).log(logger=logger, use_rich=False)
        level, message = logger.log.call_args.args
        assert level == logging.ERROR
        assert "[E0601]" in message
        assert logger.log.call_args.kwargs["extra"]["status"] == EXIT_DATA

    def test_log_warning_level(self):
        logger = MagicMock()
        KahlerError(Code.W0602).log(logger=logger, use_rich=False)
        assert logger.log.call_args.args[0] == logging.WARNING

    def test_rich_panel_goes_to_stderr(self, capsys):
        KahlerError(Code.E0103, details="3 coefficients").log()
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "E0103" in captured.err


"""Structured error definitions and helpers for kahler-lattice.

This module provides:
- ErrorSpec: static registry entries for known error codes.
- KahlerError: an exception carrying structured metadata (category, code, exit status, details).
- to_payload: the machine-readable payload printed by the CLI.

Exit statuses follow sysexits: 64 for usage errors, 65 for data errors and
70 for internal failures such as a certificate that does not replay.
"""

from __future__ import annotations

import logging
from enum import Enum
from typing import Dict, Optional, Any

from pydantic import BaseModel
from rich.console import Console
from rich.panel import Panel
from rich.text import Text

from kahler_lattice.common.logging_config import internal_logger

EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_SOFTWARE = 70


class Category(str, Enum):
    LATTICE = "lattice"
    WEYL = "weyl"
    ENUMERATION = "enumeration"
    CONE = "cone"
    SPEC = "spec"
    CACHE = "cache"
    CONFIG = "config"
    CLI = "cli"
    GENERAL = "general"


class Code(str, Enum):
    # Lattice issues
    E0101 = "E0101"
    E0102 = "E0102"
    E0103 = "E0103"
    E0104 = "E0104"
    X0105 = "X0105"

    # Reflection group issues
    E0201 = "E0201"
    X0202 = "X0202"

    # Enumeration issues
    E0301 = "E0301"
    E0302 = "E0302"

    # Cone issues
    E0401 = "E0401"
    E0402 = "E0402"
    X0403 = "X0403"

    # Curve-cone spec issues
    E0501 = "E0501"
    E0502 = "E0502"

    # Table cache issues
    E0601 = "E0601"
    W0602 = "W0602"
    E0603 = "E0603"

    # Config file issues
    E0701 = "E0701"
    E0702 = "E0702"

    # CLI and general issues
    E0801 = "E0801"
    E0802 = "E0802"
    X0803 = "X0803"


class ErrorSpec(BaseModel):
    """Specification for a known error code.

    ``default_status`` is the process exit status the CLI uses when the
    error escapes a command.
    """

    code: Code
    default_message: str
    category: Category
    default_status: int = EXIT_DATA
    meta: Optional[Dict[str, Any]] = None

    model_config = {
        "frozen": True,
    }


ERROR_REGISTRY: Dict[str, ErrorSpec] = {
    # Lattice issues
    "E0101": ErrorSpec(
        code=Code.E0101,
        default_message="Classes belong to different manifold models",
        category=Category.LATTICE,
    ),
    "E0102": ErrorSpec(
        code=Code.E0102,
        default_message="Parity violation: e.e + K.e is odd",
        category=Category.LATTICE,
    ),
    "E0103": ErrorSpec(
        code=Code.E0103,
        default_message="Malformed class literal",
        category=Category.LATTICE,
    ),
    "E0104": ErrorSpec(
        code=Code.E0104,
        default_message="Quadratic form is not negative definite",
        category=Category.LATTICE,
    ),
    "X0105": ErrorSpec(
        code=Code.X0105,
        default_message="Genus-zero class failed the dimension cross-check iota = e.e + 1",
        category=Category.LATTICE,
        default_status=EXIT_SOFTWARE,
    ),
    # Reflection group issues
    "E0201": ErrorSpec(
        code=Code.E0201,
        default_message="Class is not a valid reflection root",
        category=Category.WEYL,
    ),
    "X0202": ErrorSpec(
        code=Code.X0202,
        default_message="Reduction measure failed to decrease",
        category=Category.WEYL,
        default_status=EXIT_SOFTWARE,
    ),
    # Enumeration issues
    "E0301": ErrorSpec(
        code=Code.E0301,
        default_message="Operation precondition not met",
        category=Category.ENUMERATION,
    ),
    "E0302": ErrorSpec(
        code=Code.E0302,
        default_message="Degree bound exceeded",
        category=Category.ENUMERATION,
    ),
    # Cone issues
    "E0401": ErrorSpec(
        code=Code.E0401,
        default_message="Cone operation precondition not met",
        category=Category.CONE,
    ),
    "E0402": ErrorSpec(
        code=Code.E0402,
        default_message="Generators do not span a pointed cone",
        category=Category.CONE,
    ),
    "X0403": ErrorSpec(
        code=Code.X0403,
        default_message="Certificate failed replay",
        category=Category.CONE,
        default_status=EXIT_SOFTWARE,
    ),
    # Curve-cone spec issues
    "E0501": ErrorSpec(
        code=Code.E0501,
        default_message="Curve-cone spec violates its structural flags",
        category=Category.SPEC,
    ),
    "E0502": ErrorSpec(
        code=Code.E0502,
        default_message="Class is not big and nef for the spec",
        category=Category.SPEC,
    ),
    # Table cache issues
    "E0601": ErrorSpec(
        code=Code.E0601,
        default_message="Cached class table is corrupted",
        category=Category.CACHE,
    ),
    "W0602": ErrorSpec(
        code=Code.W0602,
        default_message="Cached class table has a stale schema and was rebuilt",
        category=Category.CACHE,
        default_status=0,
    ),
    "E0603": ErrorSpec(
        code=Code.E0603,
        default_message="Failed to write class table cache",
        category=Category.CACHE,
    ),
    # Config file issues
    "E0701": ErrorSpec(
        code=Code.E0701,
        default_message="Configuration file could not be loaded",
        category=Category.CONFIG,
    ),
    "E0702": ErrorSpec(
        code=Code.E0702,
        default_message="Invalid configuration update",
        category=Category.CONFIG,
    ),
    # CLI and general issues
    "E0801": ErrorSpec(
        code=Code.E0801,
        default_message="Invalid command usage",
        category=Category.CLI,
        default_status=EXIT_USAGE,
    ),
    "E0802": ErrorSpec(
        code=Code.E0802,
        default_message="Malformed JSON input",
        category=Category.CLI,
    ),
    "X0803": ErrorSpec(
        code=Code.X0803,
        default_message="Unexpected error",
        category=Category.GENERAL,
        default_status=EXIT_SOFTWARE,
    ),
}


class ErrorPayload(BaseModel):
    """Pydantic model for serialized error payloads."""

    type: str
    code: str
    status: Optional[int] = None
    message: str
    details: Optional[Any] = None
    meta: Optional[Dict[str, Any]] = None


class KahlerError(Exception):
    """Exception carrying structured metadata for CLI exit codes and logging.

    Attributes:
        code: short code like 'E0101'
        message: human readable message
        category: Category enum
        status_code: process exit status
        details: optional JSON-serializable extra data
    """

    def __init__(
        self,
        code: str | Code,
        message: Optional[str] = None,
        details: Optional[Any] = None,
        cause: Optional[BaseException] = None,
        meta: Optional[Dict[str, Any]] = None,
    ):
        spec = ERROR_REGISTRY.get(Code(code).value)
        if spec is None:
            spec = ErrorSpec(
                code=Code(code),
                default_message=message or "Unknown error",
                category=Category.GENERAL,
                default_status=EXIT_SOFTWARE,
                meta=meta,
            )

        self.code = spec.code
        self.category = spec.category
        self.status_code = int(spec.default_status)
        self.message = message or spec.default_message
        self.details = details
        self.__cause__ = cause
        self.meta = meta or spec.meta
        super().__init__(f"{self.code.value}: {self.message}")

    @property
    def is_warning(self) -> bool:
        return self.code.value.startswith("W")

    def log(self, logger=None, level=None, extra=None, use_rich: bool = True):
        """
        Log the error through ``logger`` (defaults to internal_logger), or print a
        rich panel on stderr when ``use_rich`` is set.
        """
        resolved_level = level if level is not None else (logging.WARNING if self.is_warning else logging.ERROR)
        log_msg = f"[{self.code.value}] {self.message} (category: {self.category.value}, status: {self.status_code})"
        if use_rich:
            self._print_rich()
            return
        log_extra = {"code": self.code.value, "category": self.category.value, "status": self.status_code}
        if extra:
            log_extra.update(extra)
        (logger or internal_logger).log(resolved_level, log_msg, extra=log_extra)

    def _print_rich(self):
        console = Console(stderr=True)
        payload = self.to_payload(include_status=True)
        color = "yellow" if self.is_warning else "red"
        body = Text(payload["message"], style="bold")
        if payload.get("details"):
            body.append(f"\nDetails: {payload['details']}", style="dim")
        if payload.get("meta"):
            body.append(f"\nMeta: {payload['meta']}", style="dim")
        console.print(Panel(body, title=f"{payload['code']} ({payload['type']})", border_style=color))

    def to_payload(
        self, include_status: bool = False, meta: Optional[Dict[str, Any]] = None
    ) -> Dict[str, Any]:
        """Return a JSON-serializable payload.

        Format:
        {
            "type": "kahler:<category>",
            "code": "E0101",
            "status": 65,
            "message": "...",
            "details": {...},
            "meta": {...}
        }
        """
        payload = ErrorPayload(
            type=f"kahler:{self.category.value}",
            code=self.code.value,
            status=(self.status_code if include_status else None),
            message=self.message,
            details=self.details,
            meta=meta or self.meta,
        )
        return payload.model_dump()


__all__ = [
    "Category",
    "Code",
    "ErrorSpec",
    "ERROR_REGISTRY",
    "KahlerError",
    "ErrorPayload",
    "EXIT_USAGE",
    "EXIT_DATA",
    "EXIT_SOFTWARE",
]

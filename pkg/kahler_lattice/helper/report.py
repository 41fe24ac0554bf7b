"""The JSON document every command prints on stdout."""

from __future__ import annotations

import json
from typing import Any, Optional

from pydantic import BaseModel, Field
from rich.console import Console
from rich.table import Table

from kahler_lattice.enumeration.tables import CacheProvenance

EXIT_IN = 0
EXIT_OUT = 1
EXIT_BOUNDARY = 2


class RunReport(BaseModel):
    """Command echo, inputs and result of one run.

    ``timing`` is only filled with ``--timing`` so that the default output
    is byte-identical for identical argv, seed and cache state.
    """

    command: list[str]
    model: Optional[str] = None
    inputs: dict[str, Any] = Field(default_factory=dict)
    result: Any = None
    cache: Optional[CacheProvenance] = None
    timing: Optional[dict[str, float]] = None

    def to_json(self) -> str:
        payload = self.model_dump(mode="json", exclude_none=True)
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _cell(value: Any) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def print_pretty(report: RunReport, console: Optional[Console] = None) -> None:
    """Human-readable rendering of a report; JSON stays the default."""
    console = console or Console()
    table = Table(title=" ".join(report.command), show_header=True, header_style="bold")
    table.add_column("field")
    table.add_column("value", overflow="fold")
    if report.model:
        table.add_row("model", report.model)
    for key, value in report.inputs.items():
        table.add_row(f"input.{key}", _cell(value))
    result = report.model_dump(mode="json")["result"]
    if isinstance(result, dict):
        for key, value in result.items():
            table.add_row(key, _cell(value))
    else:
        table.add_row("result", _cell(result))
    if report.cache is not None:
        table.add_row("cache", report.cache.status.value)
    if report.timing:
        table.add_row("timing", _cell(report.timing))
    console.print(table)

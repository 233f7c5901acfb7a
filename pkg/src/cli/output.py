"""Rendering of command results as JSON, CSV or rich tables."""
import csv
import io
import json
from enum import Enum

import typer
from rich.console import Console
from rich.table import Table

console = Console()


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    PRETTY = "pretty"


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return " ".join(_cell(v) for v in value)
    return str(value)


def emit_json(payload) -> None:
    typer.echo(json.dumps(payload, indent=2, ensure_ascii=False))


def emit_csv(columns: list[str], rows: list[dict]) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in columns])
    typer.echo(buffer.getvalue(), nl=False)


def emit_table(title: str, columns: list[str], rows: list[dict]) -> None:
    table = Table(title=title)
    for c in columns:
        table.add_column(c)
    for row in rows:
        table.add_row(*(_cell(row.get(c)) for c in columns))
    console.print(table)


def emit_rows(fmt: OutputFormat, title: str, columns: list[str], rows: list[dict], meta: dict | None = None) -> None:
    """One table in the requested format; JSON wraps the rows with `meta`."""
    if fmt == OutputFormat.JSON:
        emit_json({**(meta or {}), "rows": rows})
    elif fmt == OutputFormat.CSV:
        emit_csv(columns, rows)
    else:
        emit_table(title, columns, rows)

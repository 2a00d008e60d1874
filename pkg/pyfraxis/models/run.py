"""Stored experiment runs."""

from dataclasses import dataclass, field
from datetime import datetime
from typing import Any


@dataclass
class RunTable:
    """A named CSV table: header plus string rows."""

    name: str
    header: tuple[str, ...]
    rows: list[list[str]] = field(default_factory=list)

    def column(self, name: str) -> list[str]:
        """Values of one column, by header name."""
        index = self.header.index(name)
        return [row[index] for row in self.rows]


@dataclass
class RunRecord:
    """One CLI invocation: its resolved config, summary and tables."""

    name: str
    command: str
    config: dict[str, Any] = field(default_factory=dict)
    summary: dict[str, Any] = field(default_factory=dict)
    tables: list[RunTable] = field(default_factory=list)
    created_at: datetime = field(default_factory=datetime.now)

    def add_table(self, name: str, header: tuple[str, ...], rows: list[list[str]]) -> RunTable:
        table = RunTable(name, tuple(header), rows)
        self.tables.append(table)
        return table

    def table(self, name: str) -> RunTable | None:
        for table in self.tables:
            if table.name == name:
                return table
        return None

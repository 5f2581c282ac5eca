"""Unit-annotated tabular output (aligned text, CSV, JSON)."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

__all__ = ["Column", "Report", "format_number"]


def format_number(value: float, precision: int = 4) -> str:
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    if value in (float("inf"), float("-inf")):
        return "inf" if value > 0 else "-inf"
    return format(value, f".{precision}g")


@dataclass(frozen=True)
class Column:
    name: str
    unit: Optional[str] = None  # None for text cells; "1" for plain counts

    @property
    def header(self) -> str:
        return f"{self.name} [{self.unit}]" if self.unit else self.name


@dataclass
class Report:
    columns: Sequence[Column]
    rows: list[list[Any]] = field(default_factory=list)
    title: str = ""

    def add(self, *cells: Any) -> None:
        if len(cells) != len(self.columns):
            raise ValueError(f"expected {len(self.columns)} cells, got {len(cells)}")
        for col, cell in zip(self.columns, cells):
            if isinstance(cell, (int, float)) and not isinstance(cell, bool) and col.unit is None:
                raise ValueError(f"numeric column {col.name!r} needs a unit")
        self.rows.append(list(cells))

    def _text(self, cell: Any, precision: int) -> str:
        if cell is None:
            return ""
        if isinstance(cell, (int, float)) and not isinstance(cell, bool):
            return format_number(cell, precision)
        return str(cell)

    def render(self, fmt: str = "table", precision: int = 4) -> str:
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow([c.header for c in self.columns])
            for row in self.rows:
                w.writerow([self._text(c, precision) for c in row])
            return buf.getvalue()
        if fmt == "json":
            out_rows = []
            for row in self.rows:
                obj = {}
                for col, cell in zip(self.columns, row):
                    if isinstance(cell, float):
                        txt = format_number(cell, precision)
                        cell = txt if txt in ("inf", "-inf") else float(txt)
                    obj[col.name] = cell
                out_rows.append(obj)
            doc = {
                "title": self.title,
                "units": {c.name: c.unit for c in self.columns if c.unit},
                "rows": out_rows,
            }
            return json.dumps(doc, indent=2) + "\n"
        if fmt != "table":
            raise ValueError(f"unknown output format {fmt!r}")
        headers = [c.header for c in self.columns]
        body = [[self._text(c, precision) for c in row] for row in self.rows]
        widths = [max([len(h)] + [len(r[i]) for r in body]) for i, h in enumerate(headers)]
        numeric = [c.unit is not None for c in self.columns]

        def line(cells):
            parts = [
                cell.rjust(w) if num else cell.ljust(w) for cell, w, num in zip(cells, widths, numeric)
            ]
            return "  ".join(parts).rstrip()

        out = []
        if self.title:
            out.append(self.title)
        out.append(line(headers))
        out.append("  ".join("-" * w for w in widths))
        out.extend(line(r) for r in body)
        return "\n".join(out) + "\n"

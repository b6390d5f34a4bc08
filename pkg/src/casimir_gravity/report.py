"""Machine-readable run reports with fixed field order."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Optional

from .quantities import Quantity

__all__ = ["ResultEntry", "Table", "Report"]


@dataclass(frozen=True)
class ResultEntry:
    name: str
    value: float
    unit: str
    note: str = ""

    @classmethod
    def of(cls, name: str, q: Quantity, note: str = "") -> ResultEntry:
        return cls(name, q.value, q.unit, note)

    def to_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "unit": self.unit, "note": self.note}


@dataclass(frozen=True)
class Table:
    """Tabular payload; ``units`` runs parallel to ``columns``."""

    columns: tuple[str, ...]
    units: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]

    def to_dict(self) -> dict:
        return {"columns": list(self.columns), "units": list(self.units), "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_dict(cls, d: dict) -> Table:
        return cls(tuple(d["columns"]), tuple(d["units"]), tuple(tuple(r) for r in d["rows"]))


@dataclass(frozen=True)
class Report:
    command: str
    inputs: dict
    results: tuple[ResultEntry, ...] = ()
    table: Optional[Table] = None
    caveats: tuple[str, ...] = field(default=())

    def get(self, name: str) -> ResultEntry:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_dict(self) -> dict:
        out: dict[str, Any] = {
            "command": self.command,
            "inputs": self.inputs,
            "results": [r.to_dict() for r in self.results],
        }
        if self.table is not None:
            out["table"] = self.table.to_dict()
        out["caveats"] = list(self.caveats)
        return out

    @classmethod
    def from_dict(cls, d: dict) -> Report:
        return cls(
            command=d["command"],
            inputs=d["inputs"],
            results=tuple(ResultEntry(**r) for r in d["results"]),
            table=Table.from_dict(d["table"]) if "table" in d else None,
            caveats=tuple(d.get("caveats", ())),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> Report:
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if self.table is not None:
            w.writerow([f"{c} [{u}]" for c, u in zip(self.table.columns, self.table.units)])
            for row in self.table.rows:
                w.writerow([repr(v) for v in row])
        else:
            w.writerow(["name", "value", "unit", "note"])
            for r in self.results:
                w.writerow([r.name, repr(r.value), r.unit, r.note])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"== {self.command} =="]
        if self.results:
            width = max(len(r.name) for r in self.results)
            for r in self.results:
                note = f"  ({r.note})" if r.note else ""
                lines.append(f"{r.name:<{width}}  {r.value:>14.6e} {r.unit}{note}")
        if self.table is not None:
            heads = [f"{c} [{u}]" for c, u in zip(self.table.columns, self.table.units)]
            lines.append("")
            lines.append("  ".join(f"{h:>22}" for h in heads))
            for row in self.table.rows:
                lines.append("  ".join(f"{v:>22.10e}" for v in row))
        for c in self.caveats:
            lines.append(f"note: {c}")
        return "\n".join(lines) + "\n"

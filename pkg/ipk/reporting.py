"""
Run reports emitted by the command line.

JSON and CSV output is byte-stable for identical inputs: rationals are "a/b"
strings and the JSON keys always come in the order command, params, value,
tail_bound, checks, seed, followed by any command-specific details. Timing is
only rendered in the rich table.
"""

import csv
import io
import json
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction

from rich import box
from rich.console import Console
from rich.table import Table

from .checks.common import CheckResult
from .exactnum import format_rational


class OutputFormat(StrEnum):
    JSON = "json"
    CSV = "csv"
    TABLE = "table"


@dataclass
class RunReport:
    command: str
    params: dict[str, object] = field(default_factory=dict)
    value: Fraction | None = None
    tail_bound: Fraction | None = None
    checks: list[CheckResult] = field(default_factory=list)
    seed: int | None = None
    details: dict[str, object] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def as_dict(self) -> dict[str, object]:
        payload: dict[str, object] = {
            "command": self.command,
            "params": self.params,
            "value": None if self.value is None else format_rational(self.value),
            "tail_bound": None if self.tail_bound is None else format_rational(self.tail_bound),
            "checks": [check.as_dict() for check in self.checks],
            "seed": self.seed,
        }
        payload.update(self.details)
        return payload

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)

    def to_csv(self) -> str:
        """One row per check, per path step, or per scalar field."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        path = self.details.get("path")
        if self.checks:
            writer.writerow(["name", "lhs", "rhs", "pass"])
            for check in self.checks:
                row = check.as_dict()
                writer.writerow([row["name"], row["lhs"], row["rhs"], "true" if check.passed else "false"])
        elif isinstance(path, list):
            width = len(path[0]) if path else 0
            writer.writerow(["t", *(f"y{k}" for k in range(1, width + 1))])
            for t, state in enumerate(path):
                writer.writerow([t, *state])
        else:
            writer.writerow(["field", "value"])
            for key, value in self.as_dict().items():
                if key in ("params", "checks"):
                    continue
                writer.writerow([key, "" if value is None else _flat(value)])
        return buffer.getvalue()

    def to_table(self) -> Table:
        table = Table(
            title=f"ipk {self.command}",
            caption=f"completed in {self.elapsed:.2f}s",
            box=box.SIMPLE,
            show_header=True,
            header_style="bold cyan",
        )
        if self.checks:
            table.add_column("Check", style="white")
            table.add_column("lhs", style="cyan")
            table.add_column("rhs", style="cyan")
            table.add_column("Result", no_wrap=True)
            for check in self.checks:
                row = check.as_dict()
                status = "[green]pass[/green]" if check.passed else "[red]FAIL[/red]"
                table.add_row(check.name, str(row["lhs"]), str(row["rhs"]), status)
            return table

        table.add_column("Field", style="green", no_wrap=True)
        table.add_column("Value", style="white")
        for key, value in self.as_dict().items():
            if key == "checks" or value is None:
                continue
            table.add_row(key, _flat(value))
        return table

    def render(self, output: OutputFormat | str, console: Console) -> None:
        output = OutputFormat(output)
        if output is OutputFormat.TABLE:
            console.print()
            console.print(self.to_table())
            console.print()
        elif output is OutputFormat.CSV:
            console.file.write(self.to_csv())
        else:
            console.file.write(self.to_json() + "\n")


def _flat(value: object) -> str:
    if isinstance(value, str):
        return value
    return json.dumps(value, separators=(",", ":"))

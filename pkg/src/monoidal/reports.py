"""Pass/fail reports returned by the randomized law checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    """Named boolean checks plus optional witnesses explaining failures.

    A checker never raises on a failed law; it records the failure here so
    callers (tests, the ``check`` subcommand) decide what to do with it.
    """

    title: str
    checks: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, Any] = field(default_factory=dict)

    def record(self, name: str, passed: bool, witness: Any = None) -> bool:
        # A check that failed once stays failed; the first witness is kept.
        previous = self.checks.get(name, True)
        self.checks[name] = previous and bool(passed)
        if not passed and name not in self.witnesses and witness is not None:
            self.witnesses[name] = witness
        return bool(passed)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [name for name, passed in self.checks.items() if not passed]

    def lines(self) -> list[str]:
        out = []
        for name, passed in self.checks.items():
            line = f"{'PASS' if passed else 'FAIL'} {self.title}: {name}"
            if not passed and name in self.witnesses:
                line += f" (witness: {self.witnesses[name]!r})"
            out.append(line)
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())

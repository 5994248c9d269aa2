from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class ValidationReport:
    """Collected property violations; ``ok`` iff there are none."""

    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, prop: str, witness: str) -> None:
        self.violations.append((prop, witness))

    def extend(self, other: "ValidationReport") -> None:
        self.violations.extend(other.violations)

    def properties(self) -> set[str]:
        return {p for p, _ in self.violations}

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(f"{p}: {w}" for p, w in self.violations)

"""Check reports shared by all validation and axiom-suite operations."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple = ()
    labels: tuple = ()
    detail: str = ""

    def to_dict(self) -> dict:
        out = {"law": self.law, "witness": list(self.labels or self.witness)}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    """Outcome of a family of checks: which laws ran and which failed."""

    subject: str
    checked: list[str] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def failed(self, law: str) -> list[Violation]:
        return [v for v in self.violations if v.law == law]

    def passed(self, law: str) -> bool:
        return law in self.checked and not self.failed(law)

    def add(self, violation: Violation) -> None:
        self.violations.append(violation)

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "checked": list(self.checked),
            "violations": [v.to_dict() for v in self.violations],
        }

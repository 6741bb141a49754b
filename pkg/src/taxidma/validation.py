"""Structured validation defects and reports.

Defects are data, not exceptions: validators collect them into a
ValidationReport so callers can decide what is fatal.
"""

from __future__ import annotations

from dataclasses import dataclass, field

SEVERITY_ERROR = "error"
SEVERITY_WARNING = "warning"

# Background blocks sort before stage 0 in report ordering.
_BACKGROUND_SORT = -1


@dataclass(frozen=True)
class Defect:
    """One rule violation with enough location detail to act on it.

    ``stage`` is None for taxonomy defects, -1 for a record's background
    block, and the 0-based stage index otherwise.
    """

    rule_id: str
    severity: str
    message: str
    record_id: str | None = None
    stage: int | None = None
    path: str = ""

    @property
    def location(self) -> str:
        parts = []
        if self.record_id is not None:
            parts.append(self.record_id)
            if self.stage is not None:
                parts.append("background" if self.stage == _BACKGROUND_SORT else f"stage[{self.stage}]")
        if self.path:
            parts.append(self.path)
        return ":".join(parts) if parts else "-"

    def to_dict(self) -> dict:
        return {
            "rule_id": self.rule_id,
            "severity": self.severity,
            "location": self.location,
            "message": self.message,
        }

    def _sort_key(self):
        return (
            self.record_id or "",
            self.stage if self.stage is not None else _BACKGROUND_SORT - 1,
            self.path,
            self.rule_id,
            self.message,
        )


def background_defect(rule_id: str, severity: str, message: str, record_id: str, path: str = "") -> Defect:
    return Defect(rule_id, severity, message, record_id=record_id, stage=_BACKGROUND_SORT, path=path)


@dataclass(frozen=True)
class ValidationReport:
    """Deterministically ordered list of defects (by location, then rule)."""

    defects: tuple[Defect, ...] = field(default_factory=tuple)

    @staticmethod
    def collect(defects) -> "ValidationReport":
        return ValidationReport(tuple(sorted(defects, key=Defect._sort_key)))

    @property
    def errors(self) -> tuple[Defect, ...]:
        return tuple(d for d in self.defects if d.severity == SEVERITY_ERROR)

    @property
    def warnings(self) -> tuple[Defect, ...]:
        return tuple(d for d in self.defects if d.severity == SEVERITY_WARNING)

    @property
    def ok(self) -> bool:
        """True when no error-severity defects are present."""
        return not self.errors

    @property
    def clean(self) -> bool:
        """True when there are no defects at all, warnings included."""
        return not self.defects

    def has_rule(self, rule_id: str) -> bool:
        return any(d.rule_id == rule_id for d in self.defects)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "error_count": len(self.errors),
            "warning_count": len(self.warnings),
            "defects": [d.to_dict() for d in self.defects],
        }

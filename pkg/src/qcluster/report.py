"""Pass/fail reports returned by the verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field


def vertex_label(v) -> str:
    if isinstance(v, tuple):
        return f"({v[0]},{v[1]})"
    return str(v)


@dataclass
class Report:
    name: str
    passed: bool = True
    violations: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    def fail(self, **details) -> None:
        self.passed = False
        self.violations.append(details)

    def merge(self, other: "Report") -> None:
        if not other.passed:
            self.passed = False
        self.violations.extend({"check": other.name, **v} for v in other.violations)

    def to_json(self) -> dict:
        return {
            "identity": self.name,
            "status": "pass" if self.passed else "fail",
            "violations": self.violations,
            "info": self.info,
        }


@dataclass
class PresentationReport:
    """Relation-by-relation outcome; a relation passes iff its residual is zero."""

    name: str
    entries: list = field(default_factory=list)  # (relation, form, residual or None)
    notes: list = field(default_factory=list)

    def record(self, relation: str, lhs, rhs, form: str = "printed") -> None:
        residual = lhs - rhs
        self.entries.append((relation, form, None if residual.is_zero() else residual))

    @property
    def passed(self) -> bool:
        return all(res is None for _, _, res in self.entries)

    def failures(self, form: str | None = None) -> list:
        return [e for e in self.entries if e[2] is not None and (form is None or e[1] == form)]

    def to_json(self) -> list:
        return [
            {
                "relation": rel,
                "form": form,
                "status": "pass" if res is None else "fail",
                "residual": None if res is None else res.to_json(),
            }
            for rel, form, res in self.entries
        ]

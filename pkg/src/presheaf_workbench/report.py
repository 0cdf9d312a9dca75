"""Validation reports: a list of named checks, each passed or failed."""

from dataclasses import dataclass, field


@dataclass
class Report:
    """Ordered record of checks.

    A report is truthy exactly when every recorded check passed, so it can be
    used directly in ``if`` and ``assert`` statements.
    """

    subject: str = ""
    checks: list = field(default_factory=list)  # [(name, passed, detail)]

    def record(self, name, passed, detail=""):
        self.checks.append((name, bool(passed), detail))
        return bool(passed)

    def fail(self, name, detail=""):
        return self.record(name, False, detail)

    def extend(self, other, prefix=""):
        for name, passed, detail in other.checks:
            self.checks.append((prefix + name, passed, detail))

    @property
    def ok(self):
        return all(passed for _, passed, _ in self.checks)

    @property
    def failures(self):
        return [(name, detail) for name, passed, detail in self.checks if not passed]

    def __bool__(self):
        return self.ok

    def to_dict(self):
        return {
            "subject": self.subject,
            "ok": self.ok,
            "checks": [
                {"name": name, "passed": passed, "detail": detail}
                for name, passed, detail in self.checks
            ],
        }

    def render(self):
        lines = [f"{self.subject or 'report'}: {'PASS' if self.ok else 'FAIL'}"]
        for name, passed, detail in self.checks:
            mark = "ok  " if passed else "FAIL"
            lines.append(f"  [{mark}] {name}" + (f" ({detail})" if detail else ""))
        return "\n".join(lines)

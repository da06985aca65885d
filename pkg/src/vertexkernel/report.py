"""Check results and validation reports.

Every checker in the package returns a ValidationReport: a list of named
CheckResults, each carrying the formula identifier it verified and, on
failure, a witness string pinpointing the first offending instance.
Reports serialize to JSON deterministically (checks sorted by id, no
wall-clock fields).
"""

from dataclasses import dataclass, field

__all__ = ["CheckResult", "ValidationReport"]


@dataclass
class CheckResult:
    check_id: str
    passed: bool
    witness: str = ""
    details: str = ""

    def to_json(self):
        out = {"check": self.check_id, "passed": self.passed}
        if self.witness:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out


@dataclass
class ValidationReport:
    subject: str = ""
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def add(self, check_id, passed, witness="", details=""):
        self.checks.append(CheckResult(check_id, bool(passed), witness, details))
        return self

    def record(self, check_id, failures, total, details=""):
        """Summarize a sweep: failures is a list of witness strings."""
        if failures:
            w = failures[0] if len(failures) == 1 else f"{failures[0]} (+{len(failures) - 1} more)"
            self.add(check_id, False, witness=w, details=details)
        else:
            self.add(check_id, True, details=details or f"{total} instances checked")
        return self

    def merge(self, other):
        self.checks.extend(other.checks)
        return self

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def to_json(self):
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [c.to_json() for c in sorted(self.checks, key=lambda c: c.check_id)],
        }

    def summary(self):
        lines = [f"[{'PASS' if c.passed else 'FAIL'}] {c.check_id}"
                 + (f"  witness: {c.witness}" if c.witness else "")
                 + (f"  ({c.details})" if c.details else "")
                 for c in sorted(self.checks, key=lambda c: c.check_id)]
        status = "PASS" if self.passed else "FAIL"
        head = f"{self.subject}: {status}" if self.subject else status
        return "\n".join([head] + lines)

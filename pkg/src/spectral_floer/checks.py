"""Pass/fail records shared by the validators and the CLI report."""

from dataclasses import dataclass, field
from typing import List, Optional


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    where: Optional[str] = None

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        loc = f" at {self.where}" if self.where else ""
        extra = f": {self.detail}" if self.detail else ""
        return f"{tag} {self.name}{loc}{extra}"

    def as_dict(self):
        d = {"name": self.name, "ok": self.ok}
        if self.detail:
            d["detail"] = self.detail
        if self.where:
            d["where"] = self.where
        return d


@dataclass
class ValidationReport:
    subject: str
    checks: List[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name, ok, detail="", where=None):
        self.checks.append(Check(name, bool(ok), detail, where))

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.ok]

    def failed_names(self):
        return {c.name for c in self.failures()}

    def extend(self, other: "ValidationReport"):
        self.checks.extend(other.checks)

"""Verification outcomes and their JSON form."""

import json
from dataclasses import dataclass, field

STATUSES = ("verified", "counterexample", "skipped")


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking one claim or identity up to a truncation bound.

    ``status`` is "verified" (every coefficient in range checked out, which
    is evidence, not proof), "counterexample" or "skipped".
    """

    id: str
    kind: str
    status: str
    checked: int
    source: str
    proof_status: str
    failure_index: int | None = None
    failure_value: str | None = None
    reason: str | None = None
    elapsed: float = field(default=0.0, compare=False)
    detail: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if (self.status == "counterexample") != (self.failure_index is not None):
            raise ValueError("a counterexample needs a failure index and vice versa")

    @property
    def ok(self):
        return self.status == "verified"

    def to_dict(self):
        d = {
            "id": self.id,
            "kind": self.kind,
            "status": self.status,
            "checked": self.checked,
        }
        if self.failure_index is not None:
            d["failure"] = {"index": self.failure_index, "value": self.failure_value}
        d["source"] = self.source
        d["proof_status"] = self.proof_status
        if self.reason is not None:
            d["reason"] = self.reason
        return d

    @classmethod
    def from_dict(cls, d):
        failure = d.get("failure")
        return cls(
            id=d["id"],
            kind=d["kind"],
            status=d["status"],
            checked=d["checked"],
            source=d["source"],
            proof_status=d["proof_status"],
            failure_index=failure["index"] if failure else None,
            failure_value=failure["value"] if failure else None,
            reason=d.get("reason"),
        )

    def text_line(self):
        line = f"{self.status.upper():<15} {self.id}  [checked {self.checked}; {self.proof_status}]"
        if self.failure_index is not None:
            line += f"  first failure at index {self.failure_index}: {self.failure_value}"
        if self.reason:
            line += f"  ({self.reason})"
        return line


def dump_reports(reports, order, suite=None, extra=None):
    doc = {}
    if suite is not None:
        doc["suite"] = suite
    doc["order"] = order
    doc["results"] = [r.to_dict() for r in reports]
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2, sort_keys=False)


def load_reports(text):
    doc = json.loads(text)
    return doc, [VerificationReport.from_dict(r) for r in doc["results"]]

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Optional

PASS = "pass"
FAIL = "fail"
VACUOUS = "vacuous"


@dataclass(frozen=True)
class Verdict:
    """Outcome of one bounded, exhaustive identity check.

    ``fail`` always carries a witness; ``vacuous`` always has zero instances.
    """

    status: str
    checked_count: int = 0
    witness: Optional[Dict[str, Any]] = None
    note: Optional[str] = None

    def __post_init__(self):
        if self.status not in (PASS, FAIL, VACUOUS):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == FAIL and self.witness is None:
            raise ValueError("a failing verdict needs a witness")
        if self.status == VACUOUS and self.checked_count != 0:
            raise ValueError("a vacuous verdict checks nothing")

    @classmethod
    def passed(cls, checked: int, note: Optional[str] = None) -> "Verdict":
        if checked == 0:
            return cls(VACUOUS, 0, None, note)
        return cls(PASS, checked, None, note)

    @classmethod
    def failed(cls, checked: int, witness: Dict[str, Any]) -> "Verdict":
        return cls(FAIL, max(checked, 1), witness)

    @classmethod
    def vacuous(cls, note: Optional[str] = None) -> "Verdict":
        return cls(VACUOUS, 0, None, note)

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"status": self.status, "checked_count": self.checked_count}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note is not None:
            out["note"] = self.note
        return out

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Verdict":
        return cls(data["status"], data["checked_count"], data.get("witness"), data.get("note"))

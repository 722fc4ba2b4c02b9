from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PROVEN = "Proven"
REFUTED = "Refuted"
NO_COUNTEREXAMPLE = "NoCounterexampleUpTo"
INAPPLICABLE = "Inapplicable"


@dataclass
class Verdict:
    """Outcome of one property check.

    ``Refuted`` always carries a ``witness`` that re-verifies by direct
    evaluation; ``Proven`` is only produced by exhaustive checks or by a
    finite certificate.  ``evidence`` holds certificates (idempotents,
    exponents, counts) in JSON-ready form.
    """

    status: str
    witness: Any = None
    bound: int | None = None
    reason: str = ""
    evidence: dict = field(default_factory=dict)

    @classmethod
    def proven(cls, **evidence) -> "Verdict":
        return cls(PROVEN, evidence=evidence)

    @classmethod
    def refuted(cls, witness, reason: str = "", **evidence) -> "Verdict":
        return cls(REFUTED, witness=witness, reason=reason, evidence=evidence)

    @classmethod
    def no_counterexample(cls, bound: int, reason: str = "", **evidence) -> "Verdict":
        return cls(NO_COUNTEREXAMPLE, bound=bound, reason=reason, evidence=evidence)

    @classmethod
    def inapplicable(cls, reason: str) -> "Verdict":
        return cls(INAPPLICABLE, reason=reason)

    @property
    def holds(self) -> bool:
        return self.status == PROVEN

    @property
    def fails(self) -> bool:
        return self.status == REFUTED

    def label(self) -> str:
        if self.status == NO_COUNTEREXAMPLE:
            return f"{self.status}({self.bound})"
        return self.status

    def to_json(self) -> dict:
        out: dict[str, Any] = {"status": self.status}
        if self.bound is not None:
            out["bound"] = self.bound
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.reason:
            out["reason"] = self.reason
        if self.evidence:
            out["evidence"] = _jsonable(self.evidence)
        return out


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "tolist"):
        return x.tolist()
    return x

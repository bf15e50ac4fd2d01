"""
Attack results.

Every attack returns an AttackReport. A failed attack is a normal result
with status "failed"; only broken inputs raise.
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional


class AttackStatus(str, Enum):
    OK = "ok"
    FAILED = "failed"
    DEGENERATE = "degenerate"


@dataclass
class Candidate:
    """One ranked guess: recovered text or key plus its scores"""
    value: str
    score: float
    offset: Optional[int] = None
    extra: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"value": self.value, "score": round(self.score, 6)}
        if self.offset is not None:
            data["offset"] = self.offset
        data.update(self.extra)
        return data


@dataclass
class AttackReport:
    """Outcome of one attack run"""
    method: str
    status: AttackStatus = AttackStatus.OK
    plaintext: Optional[str] = None
    key: Optional[str] = None
    scores: Dict[str, float] = field(default_factory=dict)
    accuracy: Optional[float] = None
    wall_time: float = 0.0
    candidates: List[Candidate] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)
    reason: Optional[str] = None
    summary: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.status = AttackStatus(self.status)
        if self.accuracy is not None and not 0.0 <= self.accuracy <= 1.0:
            raise ValueError(f"accuracy must be in [0, 1], got {self.accuracy}")

    @property
    def succeeded(self) -> bool:
        return self.status == AttackStatus.OK

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "method": self.method,
            "status": self.status.value,
            "plaintext": self.plaintext,
            "key": self.key,
            "scores": {k: round(v, 6) for k, v in self.scores.items()},
            "accuracy": self.accuracy,
            "wall_time": round(self.wall_time, 4),
            "candidates": [c.to_dict() for c in self.candidates],
            "details": self.details,
        }
        if self.reason:
            data["reason"] = self.reason
        # headline fields first, e.g. {"L": 2, ...} for Berlekamp-Massey
        return {**self.summary, **data}

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


"""
Replay detection over a frame log.

Frame identity is (sequence number, payload digest). A frame is flagged
when that pair was seen before (a verbatim replay), or when its sequence
number was seen before with a different payload (an anomaly).
"""

import hashlib
import time
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Set, Tuple

from cipherlab.cryptanalysis.report import AttackReport


class ReplayReason(str, Enum):
    DUPLICATE = "duplicate"
    SEQ_REUSE = "seq-reuse"


@dataclass(frozen=True)
class ReplayFlag:
    index: int
    seq: int
    reason: ReplayReason
    first_seen: int

    def to_dict(self) -> Dict:
        return {
            "index": self.index,
            "seq": self.seq,
            "reason": self.reason.value,
            "first_seen": self.first_seen,
        }


def frame_digest(payload: bytes) -> str:
    return hashlib.sha256(payload).hexdigest()


def detect_replay(frames: Iterable[Tuple[int, str]]) -> List[ReplayFlag]:
    """Flag repeated frames, in arrival order; first occurrences are never flagged."""
    seen: Dict[Tuple[int, str], int] = {}
    seq_first: Dict[int, int] = {}
    flags: List[ReplayFlag] = []
    for index, (seq, digest) in enumerate(frames):
        key = (seq, digest)
        if key in seen:
            flags.append(ReplayFlag(index, seq, ReplayReason.DUPLICATE, seen[key]))
        elif seq in seq_first:
            flags.append(ReplayFlag(index, seq, ReplayReason.SEQ_REUSE, seq_first[seq]))
            seen[key] = index
        else:
            seen[key] = index
            seq_first[seq] = index
    return flags


def replay_report(frames: List[Tuple[int, str]]) -> AttackReport:
    started = time.perf_counter()
    flags = detect_replay(frames)
    reasons: Set[str] = {f.reason.value for f in flags}
    return AttackReport(
        method="replay",
        summary={"flagged": [f.index for f in flags]},
        details={
            "frames": len(frames),
            "flags": [f.to_dict() for f in flags],
            "reasons": sorted(reasons),
        },
        wall_time=time.perf_counter() - started,
    )

"""
The passive eavesdropper: find frames that share key material and attack them.

Frames carrying an IV are grouped by IV. Without IVs, two payloads are
taken to share a keystream when their XOR looks like the XOR of two
ASCII texts (high bit clear on nearly every byte). Groups are the
connected components of that relation.
"""

import time
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

from cipherlab.channel.session import Frame, Trace
from cipherlab.cipher import xor_bytes
from cipherlab.config import HillClimbBudget, get_config
from cipherlab.cryptanalysis import (
    break_monoalphabetic,
    character_accuracy,
    detect_replay,
    dictionary_hit_rate,
    english_wordlist,
    keystream_reuse_attack,
    recover_keystream_from_depth,
)
from cipherlab.logger import get_logger

logger = get_logger(__name__)

CANCELLATION_MIN_OVERLAP = 24
CANCELLATION_ASCII_FRACTION = 0.95
MAX_PAIRS_PER_GROUP = 8


class AttackKind(str, Enum):
    REPLAY = "replay"
    REUSE = "reuse"
    DEPTH = "depth"


DEFAULT_SUITE = (AttackKind.REPLAY, AttackKind.REUSE, AttackKind.DEPTH)


@dataclass
class TrialResult:
    """Score of one attack against one trace"""
    profile: str
    attack: str
    accuracy: float
    dictionary_hit_rate: float
    frames_observed: int
    wall_time: float
    reason: Optional[str] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        for name in ("accuracy", "dictionary_hit_rate"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "profile": self.profile,
            "attack": self.attack,
            "accuracy": round(self.accuracy, 4),
            "dictionary_hit_rate": round(self.dictionary_hit_rate, 4),
            "frames_observed": self.frames_observed,
            "wall_time": round(self.wall_time, 4),
            "reason": self.reason,
            "details": self.details,
        }


def keystream_cancels(a: bytes, b: bytes) -> bool:
    """True when a XOR b looks like the XOR of two ASCII plaintexts."""
    overlap = min(len(a), len(b))
    if overlap < CANCELLATION_MIN_OVERLAP:
        return False
    diff = np.frombuffer(xor_bytes(a[:overlap], b[:overlap]), dtype=np.uint8)
    return float((diff < 0x80).mean()) >= CANCELLATION_ASCII_FRACTION


def group_by_key_material(frames: Sequence[Frame]) -> List[List[Frame]]:
    """Groups of two or more frames believed to share one keystream."""
    parent = list(range(len(frames)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        parent[find(j)] = find(i)

    for i, j in combinations(range(len(frames)), 2):
        a, b = frames[i], frames[j]
        if a.iv is not None or b.iv is not None:
            linked = a.iv is not None and a.iv == b.iv
        else:
            linked = keystream_cancels(a.payload, b.payload)
        if linked:
            union(i, j)

    groups: Dict[int, List[Frame]] = {}
    for i, frame in enumerate(frames):
        groups.setdefault(find(i), []).append(frame)
    return [g for g in groups.values() if len(g) > 1]


def _unique_frames(trace: Trace) -> List[Frame]:
    flagged = {f.index for f in detect_replay(trace.frame_ids())}
    return [f for i, f in enumerate(trace.frames) if i not in flagged]


def _truth_bytes(trace: Trace, frame: Frame) -> bytes:
    message = trace.message_for(frame)
    return message.encode("utf-8") if message is not None else b""


def _replay_result(trace: Trace) -> TrialResult:
    started = time.perf_counter()
    flags = detect_replay(trace.frame_ids())
    return TrialResult(
        profile=trace.profile,
        attack=AttackKind.REPLAY.value,
        accuracy=0.0,
        dictionary_hit_rate=0.0,
        frames_observed=len(trace.frames),
        wall_time=time.perf_counter() - started,
        reason=None if flags else "no replays",
        details={"flagged": [f.index for f in flags], "flags": [f.to_dict() for f in flags]},
    )


def _reuse_result(trace: Trace, groups: List[List[Frame]], crib: str) -> TrialResult:
    started = time.perf_counter()
    observed = sum(len(g) for g in groups)
    if not groups:
        return TrialResult(trace.profile, AttackKind.REUSE.value, 0.0, 0.0, len(trace.frames),
                           time.perf_counter() - started, reason="no reuse")

    wordlist = english_wordlist()
    accuracies: List[float] = []
    hit_rates: List[float] = []
    pairs: List[Dict[str, Any]] = []
    for group in groups:
        first = group[0]
        for other in group[1:1 + MAX_PAIRS_PER_GROUP]:
            report = keystream_reuse_attack(first.payload, other.payload, crib)
            truths = [_truth_bytes(trace, first), _truth_bytes(trace, other)]
            # the crib may sit in either plaintext
            best = 0.0
            for cand in report.candidates:
                start, end = cand.offset, cand.offset + len(cand.value)
                for truth in truths:
                    window = truth[start:end].decode("latin-1")
                    if window:
                        best = max(best, character_accuracy(cand.value, window))
            accuracies.append(best)
            hit_rates.append(dictionary_hit_rate(report.plaintext or "", wordlist))
            pairs.append({
                "seqs": [first.seq, other.seq],
                "status": report.status.value,
                "top_offset": report.candidates[0].offset if report.candidates else None,
                "top_candidate": report.candidates[0].value if report.candidates else None,
            })

    return TrialResult(
        profile=trace.profile,
        attack=AttackKind.REUSE.value,
        accuracy=float(np.mean(accuracies)),
        dictionary_hit_rate=float(np.mean(hit_rates)),
        frames_observed=observed,
        wall_time=time.perf_counter() - started,
        details={"groups": len(groups), "pairs": pairs, "crib": crib},
    )


def _depth_results(
    trace: Trace,
    groups: List[List[Frame]],
    min_frames: int,
    min_letters: int,
    budget: HillClimbBudget,
    rng_seed: int,
) -> List[TrialResult]:
    wordlist = english_wordlist()
    results = []
    for group in (g for g in groups if len(g) >= min_frames):
        started = time.perf_counter()
        key = recover_keystream_from_depth([f.payload for f in group])
        recovered = [xor_bytes(f.payload, key[:len(f.payload)]).decode("latin-1") for f in group]
        truths = [_truth_bytes(trace, f).decode("utf-8", errors="replace") for f in group]
        accuracy = float(np.mean([character_accuracy(r, t) for r, t in zip(recovered, truths)]))
        joined = " ".join(recovered)
        details: Dict[str, Any] = {"seqs": [f.seq for f in group], "depth_accuracy": round(accuracy, 4)}

        letters = sum(1 for ch in joined if ch.isascii() and ch.isalpha())
        if letters >= min_letters:
            mono = break_monoalphabetic(joined, budget=budget, rng_seed=rng_seed, truth=" ".join(truths))
            details["mono_accuracy"] = mono.accuracy
            details["mono_key"] = mono.key
            # keep whichever reading hits more dictionary words
            if dictionary_hit_rate(mono.plaintext, wordlist) > dictionary_hit_rate(joined, wordlist):
                joined = mono.plaintext
                accuracy = max(accuracy, mono.accuracy or 0.0)

        results.append(TrialResult(
            profile=trace.profile,
            attack=AttackKind.DEPTH.value,
            accuracy=accuracy,
            dictionary_hit_rate=dictionary_hit_rate(joined, wordlist),
            frames_observed=len(group),
            wall_time=time.perf_counter() - started,
            details=details,
        ))
    return results


def eavesdrop_and_attack(
    trace: Trace,
    suite: Iterable[AttackKind] = DEFAULT_SUITE,
    *,
    crib: Optional[str] = None,
    budget: Optional[HillClimbBudget] = None,
    rng_seed: Optional[int] = None,
) -> List[TrialResult]:
    """Run the attack suite on a captured trace and score against its ground truth."""
    settings = get_config()
    suite = [AttackKind(a) for a in suite]
    crib = crib or settings.attack.default_crib
    budget = budget or settings.evaluation.budget
    rng_seed = settings.default_seed if rng_seed is None else rng_seed

    results: List[TrialResult] = []
    if AttackKind.REPLAY in suite:
        results.append(_replay_result(trace))

    groups = group_by_key_material(_unique_frames(trace))
    logger.debug("Key material groups", profile=trace.profile, groups=len(groups))
    if AttackKind.REUSE in suite:
        results.append(_reuse_result(trace, groups, crib))
    if AttackKind.DEPTH in suite:
        results.extend(_depth_results(
            trace, groups, settings.attack.depth_min_frames, settings.attack.min_mono_letters, budget, rng_seed,
        ))
    return results

"""
Keystream reuse: two-time pad crib dragging and many-time pad recovery.

Two ciphertexts under one keystream XOR to p1 XOR p2, so the key drops
out. Dragging a guessed fragment (the crib) across that difference
exposes the other plaintext wherever the guess is right.
"""

import string
import time
from typing import List, Optional, Sequence

import numpy as np

from cipherlab.cipher import xor_bytes
from cipherlab.config import get_config
from cipherlab.cryptanalysis.reference import QuadgramModel, english_reference, quadgram_model
from cipherlab.cryptanalysis.report import AttackReport, AttackStatus, Candidate
from cipherlab.errors import AnalysisError
from cipherlab.logger import get_logger

logger = get_logger(__name__)

PLAUSIBLE = frozenset((string.ascii_letters + " .,;:'\"!?-").encode("ascii"))
_PLAUSIBLE_MASK = np.array([b in PLAUSIBLE for b in range(256)], dtype=bool)
MAX_CANDIDATES = 10


def plausible_fraction(data: bytes) -> float:
    """Share of bytes that are letters, space or common punctuation."""
    if not data:
        return 0.0
    return float(_PLAUSIBLE_MASK[np.frombuffer(data, dtype=np.uint8)].mean())


def keystream_reuse_attack(
    c1: bytes,
    c2: bytes,
    crib: str,
    *,
    model: Optional[QuadgramModel] = None,
    printable_threshold: Optional[float] = None,
    max_candidates: int = MAX_CANDIDATES,
) -> AttackReport:
    """Drag the crib across c1 XOR c2 and rank offsets by plausibility."""
    if not crib:
        raise AnalysisError("Crib must be nonempty")
    overlap = min(len(c1), len(c2))
    if overlap == 0:
        raise AnalysisError("Ciphertexts have no overlap to compare")
    settings = get_config().attack
    threshold = settings.printable_threshold if printable_threshold is None else printable_threshold
    model = model or quadgram_model()
    started = time.perf_counter()

    diff = xor_bytes(bytes(c1[:overlap]), bytes(c2[:overlap]))
    crib_bytes = crib.encode("utf-8")
    width = len(crib_bytes)
    degenerate = not any(diff)

    scored = []
    for offset in range(overlap - width + 1):
        recovered = xor_bytes(diff[offset:offset + width], crib_bytes)
        fraction = plausible_fraction(recovered)
        text = recovered.decode("latin-1")
        scored.append((fraction, model.mean_score(text), offset, text))
    # equal scores: lowest offset first
    scored.sort(key=lambda s: (-s[0], -s[1], s[2]))

    candidates = [
        Candidate(value=text, score=fraction, offset=offset, extra={"quadgram_mean": round(quad, 4)})
        for fraction, quad, offset, text in scored[:max_candidates]
    ]
    details = {
        "overlap": overlap,
        "crib": crib,
        "offsets_tried": len(scored),
        "xor_hex": diff.hex().upper(),
    }

    if degenerate:
        status, reason = AttackStatus.DEGENERATE, "identical ciphertexts - difference is all zero"
    elif not scored:
        status, reason = AttackStatus.FAILED, "crib longer than the ciphertext overlap"
    elif scored[0][0] < threshold:
        status, reason = AttackStatus.FAILED, f"no offset reaches printable fraction {threshold}"
    else:
        status, reason = AttackStatus.OK, None

    report = AttackReport(
        method="reuse",
        status=status,
        plaintext=candidates[0].value if candidates and status != AttackStatus.FAILED else None,
        scores={"printable": scored[0][0]} if scored else {},
        candidates=candidates,
        details=details,
        reason=reason,
        wall_time=time.perf_counter() - started,
    )
    logger.debug("Crib drag finished", status=status.value, offsets=len(scored))
    return report


def _byte_weights() -> np.ndarray:
    """Per-byte plaintext likelihood weights for column scoring."""
    reference = english_reference()
    weights = np.full(256, -2.0)
    for b in range(32, 127):
        weights[b] = 0.0
    for b in b".,;:'\"!?-":
        weights[b] = 0.3
    for letter in string.ascii_uppercase:
        freq = reference[letter]
        weights[ord(letter.lower())] = 1.0 + 10.0 * freq
        weights[ord(letter)] = 0.5 + 2.0 * freq
    weights[ord(" ")] = 2.5
    return weights


def recover_keystream_from_depth(ciphertexts: Sequence[bytes]) -> bytes:
    """Guess the shared keystream of several ciphertexts column by column.

    Each keystream byte is the value that makes the column's plaintext
    bytes most English-like; ties go to the lowest byte value.
    """
    frames: List[bytes] = [bytes(c) for c in ciphertexts if c]
    if len(frames) < 2:
        raise AnalysisError("Depth recovery needs at least two ciphertexts")
    weights = _byte_weights()
    candidates = np.arange(256, dtype=np.uint8)[:, None]
    length = max(len(c) for c in frames)
    key = bytearray(length)
    for pos in range(length):
        column = np.array([c[pos] for c in frames if len(c) > pos], dtype=np.uint8)
        scores = weights[np.bitwise_xor(candidates, column[None, :])].sum(axis=1)
        key[pos] = int(np.argmax(scores))
    return bytes(key)

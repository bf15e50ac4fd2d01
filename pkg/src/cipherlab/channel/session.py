"""
Sender -> channel -> receiver simulation.

Everything random in a session (per-frame keys, IVs, bit flips) is drawn
from one ``random.Random(rng_seed)``, so a trace is a pure function of
(profile, messages, rng_seed).
"""

import json
import random
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from cipherlab.channel.profiles import ChannelProfile, KeyPolicy
from cipherlab.config import Rc4GeneratorConfig
from cipherlab.cryptanalysis import frame_digest
from cipherlab.errors import CipherLabError, ConfigError, FrameError
from cipherlab.logger import get_logger
from cipherlab.nl_layer import (
    PipelineConfig,
    ReuseVerdict,
    SessionLog,
    issue_keystream,
    nl_decrypt,
    nl_encrypt,
)

logger = get_logger(__name__)


@dataclass(frozen=True)
class Frame:
    seq: int
    payload: bytes
    iv: Optional[bytes] = None

    def __post_init__(self):
        if self.seq < 0:
            raise ValueError(f"Frame seq must be non-negative, got {self.seq}")

    def digest(self) -> str:
        return frame_digest(self.payload)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seq": self.seq,
            "iv": self.iv.hex() if self.iv is not None else None,
            "payload": self.payload.hex(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Frame":
        iv = data.get("iv")
        return cls(int(data["seq"]), bytes.fromhex(data["payload"]), bytes.fromhex(iv) if iv else None)


@dataclass(frozen=True)
class ReceiverEntry:
    seq: int
    ok: bool
    text: Optional[str] = None
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"seq": self.seq, "ok": self.ok, "text": self.text, "error": self.error}


@dataclass(frozen=True)
class Trace:
    """Frames as the eavesdropper sees them, plus ground truth for scoring."""
    profile: str
    seed: int
    frames: Tuple[Frame, ...]
    messages: Tuple[str, ...]
    received: Tuple[ReceiverEntry, ...] = ()
    corrupted_bytes: int = 0
    key_reuses: int = 0
    metadata: Dict[str, Any] = field(default_factory=dict)

    def message_for(self, frame: Frame) -> Optional[str]:
        if 0 <= frame.seq < len(self.messages):
            return self.messages[frame.seq]
        return None

    def frame_ids(self) -> List[Tuple[int, str]]:
        return [(f.seq, f.digest()) for f in self.frames]

    def write_jsonl(self, path: Union[str, Path]) -> None:
        with open(path, "w", encoding="utf-8") as f:
            for frame in self.frames:
                f.write(json.dumps(frame.to_dict()) + "\n")

    def receiver_log(self) -> Dict[str, Any]:
        return {
            "profile": self.profile,
            "seed": self.seed,
            "corrupted_bytes": self.corrupted_bytes,
            "key_reuses": self.key_reuses,
            "entries": [e.to_dict() for e in self.received],
        }

    def write_receiver_log(self, path: Union[str, Path]) -> None:
        Path(path).write_text(json.dumps(self.receiver_log(), indent=2), encoding="utf-8")


def read_frames(path: Union[str, Path]) -> List[Frame]:
    """Frames from a trace JSON Lines file."""
    path = Path(path)
    if not path.exists():
        raise ConfigError("Trace file not found", str(path))
    frames = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            frames.append(Frame.from_dict(json.loads(line)))
        except (ValueError, KeyError, TypeError) as e:
            raise ConfigError(f"Bad trace line {lineno} ({e})", str(path)) from e
    return frames


def _frame_config(
    profile: ChannelProfile,
    base: PipelineConfig,
    rng: random.Random,
) -> Tuple[PipelineConfig, Optional[bytes]]:
    if profile.key_policy == KeyPolicy.REUSED:
        return base, None
    if profile.key_policy == KeyPolicy.FRESH:
        return base.with_generator(base.generator.reseed(rng)), None
    iv = rng.randrange(profile.effective_iv_space).to_bytes(profile.iv_bytes, "big")
    secret = base.generator.secret().data
    generator = Rc4GeneratorConfig(key_hex=(iv + secret).hex(), drop=base.generator.drop)
    return base.with_generator(generator), iv


def _corrupt(payload: bytes, rate: float, rng: random.Random) -> Tuple[bytes, int]:
    """Independently flip one random bit of each byte with probability rate."""
    if rate <= 0.0:
        return payload, 0
    data = bytearray(payload)
    flipped = 0
    for i in range(len(data)):
        if rng.random() < rate:
            data[i] ^= 1 << rng.randrange(8)
            flipped += 1
    return bytes(data), flipped


def run_session(
    profile: ChannelProfile,
    messages: Sequence[str],
    rng_seed: int,
    *,
    base_dir: Optional[Path] = None,
) -> Trace:
    if not messages:
        raise ValueError("run_session needs at least one message")
    rng = random.Random(rng_seed)
    base = profile.pipeline_config(base_dir)
    log = SessionLog()
    frames: List[Frame] = []
    received: List[ReceiverEntry] = []
    corrupted = 0
    reuses = 0

    for seq, message in enumerate(messages):
        cfg, iv = _frame_config(profile, base, rng)
        verdict, log = issue_keystream(log, cfg.generator)
        if verdict == ReuseVerdict.REPEATED:
            reuses += 1
        try:
            payload = nl_encrypt(message, cfg)
        except CipherLabError as e:
            raise FrameError(seq, e) from e
        payload, flipped = _corrupt(payload, profile.corruption, rng)
        corrupted += flipped
        frames.append(Frame(seq, payload, iv))

        try:
            received.append(ReceiverEntry(seq, True, text=nl_decrypt(payload, cfg)))
        except CipherLabError as e:
            received.append(ReceiverEntry(seq, False, error=str(e)))

    if corrupted:
        logger.info("Channel corrupted frames", profile=profile.name, flipped_bytes=corrupted)
    logger.debug("Session finished", profile=profile.name, frames=len(frames), key_reuses=reuses)
    return Trace(
        profile=profile.name,
        seed=rng_seed,
        frames=tuple(frames),
        messages=tuple(messages),
        received=tuple(received),
        corrupted_bytes=corrupted,
        key_reuses=reuses,
    )


def inject_replays(trace: Trace, k: int, rng_seed: int) -> Tuple[Trace, List[int]]:
    """The replay attacker re-sends k captured frames verbatim, each after its original.

    Returns the new trace and the positions of the injected copies.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if k and not trace.frames:
        raise ValueError("Cannot replay frames from an empty trace")
    rng = random.Random(rng_seed)
    stream: List[Tuple[Frame, bool]] = [(f, False) for f in trace.frames]
    for _ in range(k):
        originals = [i for i, (_, injected) in enumerate(stream) if not injected]
        source = rng.choice(originals)
        position = rng.randint(source + 1, len(stream))
        stream.insert(position, (stream[source][0], True))
    injected_at = [i for i, (_, injected) in enumerate(stream) if injected]
    return replace(trace, frames=tuple(f for f, _ in stream)), injected_at

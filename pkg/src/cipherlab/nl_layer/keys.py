"""
Parallel key derivation and keystream reuse bookkeeping.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, Tuple, Union

from pydantic import BaseModel

from cipherlab.config import generator_digest
from cipherlab.errors import InvalidSpecError
from cipherlab.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class ParallelKey:
    """Secret shared by sender and receiver of the language layer."""
    secret: bytes

    def __post_init__(self):
        if not self.secret:
            raise InvalidSpecError("Parallel key must be nonempty")


def derive_parallel_key(phrase: str) -> ParallelKey:
    """The UTF-8 bytes of a shared phrase, e.g. the language's own name."""
    if not phrase:
        raise InvalidSpecError("Parallel key phrase must be nonempty")
    return ParallelKey(phrase.encode("utf-8"))


class ReuseVerdict(str, Enum):
    FRESH = "fresh"
    REPEATED = "repeated"


@dataclass(frozen=True)
class SessionLog:
    """Digests of keystreams issued so far; the caller owns persistence."""
    issued: FrozenSet[str] = field(default_factory=frozenset)

    def record(self, identifier: str) -> "SessionLog":
        return SessionLog(self.issued | {identifier})

    def __contains__(self, identifier: str) -> bool:
        return identifier in self.issued

    def __len__(self) -> int:
        return len(self.issued)


def keystream_identifier(generator: BaseModel) -> str:
    return generator_digest(generator)


def key_reuse_guard(log: SessionLog, identifier: Union[str, BaseModel]) -> ReuseVerdict:
    if isinstance(identifier, BaseModel):
        identifier = keystream_identifier(identifier)
    return ReuseVerdict.REPEATED if identifier in log else ReuseVerdict.FRESH


def issue_keystream(log: SessionLog, generator: BaseModel) -> Tuple[ReuseVerdict, SessionLog]:
    """Check and record one keystream issue; repeats are logged as warnings."""
    identifier = keystream_identifier(generator)
    verdict = key_reuse_guard(log, identifier)
    if verdict == ReuseVerdict.REPEATED:
        logger.warning(
            "Keystream reused - identical key material issued twice",
            keystream_id=identifier[:16],
        )
    return verdict, log.record(identifier)

"""
Running-key value types shared by every generator.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Tuple

import numpy as np

from cipherlab.errors import InvalidSpecError


class DigitUnit(str, Enum):
    """Width of one keystream digit"""
    BIT = "bit"
    BYTE = "byte"


def pack_bits(bits: Iterable[int]) -> bytes:
    """Pack bits most-significant-bit first; a trailing partial byte is dropped."""
    arr = np.fromiter(bits, dtype=np.uint8)
    usable = (arr.size // 8) * 8
    return np.packbits(arr[:usable]).tobytes()


@dataclass(frozen=True)
class KeyStream:
    """The running key Z_0, Z_1, ... where the index plays the role of time."""
    digits: Tuple[int, ...]
    unit: DigitUnit = DigitUnit.BYTE

    @classmethod
    def from_bytes(cls, data: bytes) -> "KeyStream":
        return cls(tuple(data), DigitUnit.BYTE)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "KeyStream":
        return cls(tuple(int(b) for b in bits), DigitUnit.BIT)

    def __len__(self) -> int:
        return len(self.digits)

    def to_bytes(self) -> bytes:
        if self.unit == DigitUnit.BIT:
            return pack_bits(self.digits)
        return bytes(self.digits)

    def byte_length(self) -> int:
        return len(self.digits) // 8 if self.unit == DigitUnit.BIT else len(self.digits)

    def to_hex(self) -> str:
        return self.to_bytes().hex().upper()

    def to_bitstring(self) -> str:
        if self.unit == DigitUnit.BIT:
            return "".join(str(b) for b in self.digits)
        return "".join(f"{b:08b}" for b in self.digits)


@dataclass(frozen=True)
class SecretKey:
    """The secret key k: 1..256 octets."""
    data: bytes

    def __post_init__(self):
        if not 1 <= len(self.data) <= 256:
            raise InvalidSpecError(
                f"Secret key must be 1..256 bytes, got {len(self.data)}"
            )

    @classmethod
    def from_hex(cls, key_hex: str) -> "SecretKey":
        try:
            return cls(bytes.fromhex(key_hex))
        except ValueError as e:
            raise InvalidSpecError(f"Key is not valid hex: {key_hex!r}") from e

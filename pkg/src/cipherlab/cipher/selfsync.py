"""
Self-synchronous stream mode (ciphertext feedback).

A register R holds the last m ciphertext bytes, initialised to the IV.
Each keystream byte is z_j = F(key, R), where F runs the RC4 key schedule
over key || R and takes the first output byte. A corrupted ciphertext
byte therefore disturbs at most m + 1 plaintext bytes before the
receiver realigns. F is a teaching construction, not a secure PRF.
"""

from collections import deque
from dataclasses import dataclass

from cipherlab.errors import InvalidSpecError
from cipherlab.keystream.rc4 import rc4_ksa, rc4_prga
from cipherlab.keystream.stream import SecretKey


@dataclass(frozen=True)
class SelfSyncSpec:
    window: int
    iv: bytes
    key: SecretKey

    def __post_init__(self):
        if self.window < 1:
            raise InvalidSpecError(f"Self-sync window must be >= 1, got {self.window}")
        if len(self.iv) != self.window:
            raise InvalidSpecError(
                f"Self-sync IV must be {self.window} bytes, got {len(self.iv)}"
            )
        if len(self.key.data) + self.window > 256:
            raise InvalidSpecError("Key plus window exceeds the 256-byte RC4 key limit")


def _keystream_byte(key: bytes, register: deque) -> int:
    state = rc4_ksa(SecretKey(key + bytes(register)))
    return rc4_prga(state, 1)[0].digits[0]


def selfsync_encrypt(msg: bytes, spec: SelfSyncSpec) -> bytes:
    register = deque(spec.iv, maxlen=spec.window)
    key = spec.key.data
    out = bytearray()
    for m in msg:
        c = m ^ _keystream_byte(key, register)
        out.append(c)
        register.append(c)
    return bytes(out)


def selfsync_decrypt(ct: bytes, spec: SelfSyncSpec) -> bytes:
    register = deque(spec.iv, maxlen=spec.window)
    key = spec.key.data
    out = bytearray()
    for c in ct:
        out.append(c ^ _keystream_byte(key, register))
        register.append(c)
    return bytes(out)

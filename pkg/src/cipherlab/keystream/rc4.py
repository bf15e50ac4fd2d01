"""
RC4: a permutation of the 256 byte values walked by two 8-bit pointers.
"""

from dataclasses import dataclass
from typing import Tuple

from cipherlab.errors import InvalidSpecError
from cipherlab.keystream.stream import KeyStream, SecretKey


@dataclass(frozen=True)
class Rc4State:
    s: Tuple[int, ...]
    i: int = 0
    j: int = 0

    def __post_init__(self):
        if sorted(self.s) != list(range(256)):
            raise InvalidSpecError("RC4 state must be a permutation of 0..255")


def rc4_ksa(key: SecretKey) -> Rc4State:
    """Key-scheduling: identity mixed by 256 swaps keyed on the cycled key."""
    k = key.data
    klen = len(k)
    s = list(range(256))
    j = 0
    for i in range(256):
        j = (j + s[i] + k[i % klen]) & 0xFF
        s[i], s[j] = s[j], s[i]
    return Rc4State(tuple(s))


def _prga(state: Rc4State, n: int, keep: bool) -> Tuple[bytes, Rc4State]:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return b"", state
    s = list(state.s)
    i, j = state.i, state.j
    out = bytearray(n if keep else 0)
    for t in range(n):
        i = (i + 1) & 0xFF
        j = (j + s[i]) & 0xFF
        s[i], s[j] = s[j], s[i]
        if keep:
            out[t] = s[(s[i] + s[j]) & 0xFF]
    return bytes(out), Rc4State(tuple(s), i, j)


def rc4_prga(state: Rc4State, n: int) -> Tuple[KeyStream, Rc4State]:
    data, nxt = _prga(state, n, keep=True)
    return KeyStream.from_bytes(data), nxt


def rc4_drop(state: Rc4State, n: int) -> Rc4State:
    """Advance by n bytes, discarding the output (the RC4-drop[n] variant)."""
    return _prga(state, n, keep=False)[1]


def rc4_keystream(key: SecretKey, n: int, drop: int = 0) -> KeyStream:
    return rc4_prga(rc4_drop(rc4_ksa(key), drop), n)[0]

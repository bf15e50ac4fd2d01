"""
Synchronous stream mode: C_j = M_j XOR Z_j.
"""

from typing import Union

import numpy as np

from cipherlab.errors import InsufficientKeystreamError
from cipherlab.keystream.stream import KeyStream

Message = bytes
Ciphertext = bytes


def _as_bytes(ks: Union[KeyStream, bytes]) -> bytes:
    return ks.to_bytes() if isinstance(ks, KeyStream) else bytes(ks)


def xor_bytes(data: bytes, key: bytes) -> bytes:
    """XOR of two equal-length byte strings"""
    a = np.frombuffer(data, dtype=np.uint8)
    b = np.frombuffer(key, dtype=np.uint8)
    return np.bitwise_xor(a, b).tobytes()


def xor_encrypt(msg: Message, ks: Union[KeyStream, bytes]) -> Ciphertext:
    """Combine digit by digit with the running key; bit streams are packed MSB-first."""
    key = _as_bytes(ks)
    if len(key) < len(msg):
        raise InsufficientKeystreamError(len(msg), len(key))
    return xor_bytes(bytes(msg), key[:len(msg)])


def xor_decrypt(ct: Ciphertext, ks: Union[KeyStream, bytes]) -> Message:
    return xor_encrypt(ct, ks)


def cycle_xor(data: bytes, key: bytes) -> bytes:
    """XOR with a short key repeated to the data length"""
    if not key:
        raise ValueError("cycle_xor needs a nonempty key")
    reps = -(-len(data) // len(key))
    return xor_bytes(data, (key * reps)[:len(data)])

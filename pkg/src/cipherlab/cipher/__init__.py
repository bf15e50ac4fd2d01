"""Stream modes built on keystreams, plus classical substitutions."""

from cipherlab.cipher.selfsync import SelfSyncSpec, selfsync_decrypt, selfsync_encrypt
from cipherlab.cipher.stream import (
    Ciphertext,
    Message,
    cycle_xor,
    xor_bytes,
    xor_decrypt,
    xor_encrypt,
)
from cipherlab.cipher.substitution import (
    ALPHABET,
    IDENTITY_KEY,
    CharMap,
    SubstitutionAlphabet,
    UnmappedPolicy,
    char_substitute,
    charmap_load,
    mono_invert,
    mono_substitute,
    random_alphabet,
)

__all__ = [
    "ALPHABET",
    "CharMap",
    "Ciphertext",
    "IDENTITY_KEY",
    "Message",
    "SelfSyncSpec",
    "SubstitutionAlphabet",
    "UnmappedPolicy",
    "char_substitute",
    "charmap_load",
    "cycle_xor",
    "mono_invert",
    "mono_substitute",
    "random_alphabet",
    "selfsync_decrypt",
    "selfsync_encrypt",
    "xor_bytes",
    "xor_decrypt",
    "xor_encrypt",
]

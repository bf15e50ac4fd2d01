"""Deterministic keystream generators: LFSR, Geffe and RC4."""

from cipherlab.keystream.geffe import (
    DEFAULT_COMBINER,
    GeffeSpec,
    geffe_combine,
    geffe_keystream,
    parse_combiner,
)
from cipherlab.keystream.lfsr import (
    PRIMITIVE_TAPS,
    LfsrSpec,
    LfsrState,
    lfsr_keystream,
    lfsr_period,
    lfsr_step,
    make_lfsr,
    primitive_spec,
)
from cipherlab.keystream.rc4 import Rc4State, rc4_drop, rc4_keystream, rc4_ksa, rc4_prga
from cipherlab.keystream.stream import DigitUnit, KeyStream, SecretKey, pack_bits

__all__ = [
    "DEFAULT_COMBINER",
    "DigitUnit",
    "GeffeSpec",
    "KeyStream",
    "LfsrSpec",
    "LfsrState",
    "PRIMITIVE_TAPS",
    "Rc4State",
    "SecretKey",
    "geffe_combine",
    "geffe_keystream",
    "lfsr_keystream",
    "lfsr_period",
    "lfsr_step",
    "make_lfsr",
    "pack_bits",
    "parse_combiner",
    "primitive_spec",
    "rc4_drop",
    "rc4_keystream",
    "rc4_ksa",
    "rc4_prga",
]

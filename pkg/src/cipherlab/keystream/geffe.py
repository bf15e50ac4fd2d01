"""
Geffe combination generator: three LFSRs through an 8-entry Boolean table.

The default table is F(x1, x2, x3) = (x1 AND x2) XOR (NOT x1 AND x3); its
output agrees with x2 and with x3 on 6 of 8 rows, which is the leak the
correlation attack exploits.
"""

from dataclasses import dataclass, field, replace
from typing import Tuple

from cipherlab.errors import InvalidSpecError
from cipherlab.keystream.lfsr import LfsrState, lfsr_keystream
from cipherlab.keystream.stream import KeyStream

# index = x1*4 + x2*2 + x3
DEFAULT_COMBINER: Tuple[int, ...] = (0, 1, 0, 1, 0, 0, 1, 1)


def geffe_combine(x1: int, x2: int, x3: int) -> int:
    return DEFAULT_COMBINER[(x1 << 2) | (x2 << 1) | x3]


def parse_combiner(table: str) -> Tuple[int, ...]:
    """An 8-character bit string, rows 000..111 in order."""
    if len(table) != 8 or any(c not in "01" for c in table):
        raise InvalidSpecError(f"Combiner table must be 8 bits, got {table!r}")
    return tuple(int(c) for c in table)


@dataclass(frozen=True)
class GeffeSpec:
    selector: LfsrState
    tap_a: LfsrState
    tap_b: LfsrState
    combiner: Tuple[int, ...] = field(default=DEFAULT_COMBINER)

    def __post_init__(self):
        object.__setattr__(self, "combiner", tuple(int(b) for b in self.combiner))
        if len(self.combiner) != 8 or any(b not in (0, 1) for b in self.combiner):
            raise InvalidSpecError("Combiner must be an 8-entry table of bits")
        lengths = [s.spec.length for s in (self.selector, self.tap_a, self.tap_b)]
        if len(set(lengths)) != 3:
            raise InvalidSpecError(
                f"Geffe LFSR lengths must be pairwise distinct, got {lengths}"
            )


def geffe_keystream(spec: GeffeSpec, n: int) -> Tuple[KeyStream, GeffeSpec]:
    """Bit t = combiner(x1_t, x2_t, x3_t); also returns the advanced spec."""
    x1, sel = lfsr_keystream(spec.selector, n)
    x2, a = lfsr_keystream(spec.tap_a, n)
    x3, b = lfsr_keystream(spec.tap_b, n)
    table = spec.combiner
    bits = [
        table[(s << 2) | (p << 1) | q]
        for s, p, q in zip(x1.digits, x2.digits, x3.digits)
    ]
    return KeyStream.from_bits(bits), replace(spec, selector=sel, tap_a=a, tap_b=b)

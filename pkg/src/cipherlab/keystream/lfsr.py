"""
Fibonacci linear feedback shift registers.

Bit ordering: register position 1 holds the newest bit and position L the
oldest. Each step emits position L, computes the feedback as the XOR of
the tapped positions, shifts, and inserts the feedback at position 1.
With this convention tap p is the coefficient of x^p in the connection
polynomial 1 + c_1 x + ... + c_L x^L, i.e. s_n = XOR of s_(n-p).
"""

from dataclasses import dataclass, replace
from typing import FrozenSet, Iterable, Tuple

from cipherlab.errors import InvalidSpecError
from cipherlab.keystream.stream import KeyStream


@dataclass(frozen=True)
class LfsrSpec:
    """Register length and feedback taps (positions 1..L, L must be tapped)."""
    length: int
    taps: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, "taps", frozenset(self.taps))
        if self.length < 1:
            raise InvalidSpecError(f"LFSR length must be positive, got {self.length}")
        if not self.taps:
            raise InvalidSpecError("LFSR needs at least one tap")
        bad = sorted(t for t in self.taps if not 1 <= t <= self.length)
        if bad:
            raise InvalidSpecError(f"Tap positions {bad} outside 1..{self.length}")
        if self.length not in self.taps:
            raise InvalidSpecError(
                f"Position {self.length} must be a tap, otherwise the effective length is shorter"
            )


@dataclass(frozen=True)
class LfsrState:
    """A spec plus the current fill; register[0] is position 1."""
    spec: LfsrSpec
    register: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "register", tuple(int(b) for b in self.register))
        if len(self.register) != self.spec.length:
            raise InvalidSpecError(
                f"Register has {len(self.register)} bits, spec length is {self.spec.length}"
            )
        if any(b not in (0, 1) for b in self.register):
            raise InvalidSpecError("Register bits must be 0 or 1")
        if not any(self.register):
            raise InvalidSpecError("All-zero register emits the constant-zero stream")

    @classmethod
    def from_bitstring(cls, spec: LfsrSpec, bits: str) -> "LfsrState":
        if any(c not in "01" for c in bits):
            raise InvalidSpecError(f"Seed must be a bit string, got {bits!r}")
        return cls(spec, tuple(int(c) for c in bits))

    @classmethod
    def from_int(cls, spec: LfsrSpec, value: int) -> "LfsrState":
        """Seed integer read MSB-first as positions 1..L."""
        L = spec.length
        return cls(spec, tuple((value >> (L - 1 - i)) & 1 for i in range(L)))

    def seed_int(self) -> int:
        value = 0
        for bit in self.register:
            value = (value << 1) | bit
        return value

    def bitstring(self) -> str:
        return "".join(str(b) for b in self.register)


def make_lfsr(length: int, taps: Iterable[int], seed: str) -> LfsrState:
    return LfsrState.from_bitstring(LfsrSpec(length, frozenset(taps)), seed)


def _shift(register: Tuple[int, ...], taps: FrozenSet[int]) -> Tuple[int, Tuple[int, ...]]:
    bit = 0
    for p in taps:
        bit ^= register[p - 1]
    return register[-1], (bit,) + register[:-1]


def lfsr_step(state: LfsrState) -> Tuple[int, LfsrState]:
    """Emit the outgoing bit and return the shifted state."""
    out, register = _shift(state.register, state.spec.taps)
    return out, replace(state, register=register)


def lfsr_keystream(state: LfsrState, n: int) -> Tuple[KeyStream, LfsrState]:
    """First n output bits and the state to resume from."""
    if n < 0:
        raise ValueError("n must be non-negative")
    taps = state.spec.taps
    register = state.register
    out = []
    for _ in range(n):
        bit, register = _shift(register, taps)
        out.append(bit)
    return KeyStream.from_bits(out), replace(state, register=register)


def lfsr_period(state: LfsrState) -> int:
    """Number of steps until the register returns to its starting fill."""
    start = state.register
    current = state
    for steps in range(1, 2 ** state.spec.length + 1):
        _, current = lfsr_step(current)
        if current.register == start:
            return steps
    raise AssertionError("unreachable: LFSR trajectory is a permutation of its fills")


# Primitive feedback polynomials; period 2^L - 1 for every nonzero seed
PRIMITIVE_TAPS = {
    3: frozenset({3, 2}),
    4: frozenset({4, 3}),
    5: frozenset({5, 3}),
    7: frozenset({7, 6}),
    9: frozenset({9, 5}),
}


def primitive_spec(length: int) -> LfsrSpec:
    if length not in PRIMITIVE_TAPS:
        raise InvalidSpecError(
            f"No bundled primitive polynomial for L={length}; choose from {sorted(PRIMITIVE_TAPS)}"
        )
    return LfsrSpec(length, PRIMITIVE_TAPS[length])

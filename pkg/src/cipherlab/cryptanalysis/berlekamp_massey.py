"""
Berlekamp-Massey over GF(2): the shortest LFSR generating a bit sequence.

The connection polynomial C(x) = 1 + c_1 x + ... + c_L x^L satisfies
s_n = XOR of c_p * s_(n-p), matching the tap convention of
``cipherlab.keystream.lfsr``: tap p is set exactly when c_p = 1.
"""

import time
from dataclasses import dataclass
from typing import FrozenSet, List, Sequence, Tuple, Union

from cipherlab.cryptanalysis.correlation import as_bit_array
from cipherlab.cryptanalysis.report import AttackReport, AttackStatus
from cipherlab.errors import AnalysisError
from cipherlab.keystream import KeyStream, LfsrSpec, LfsrState


@dataclass(frozen=True)
class LinearComplexity:
    length: int
    connection: Tuple[int, ...]

    @property
    def taps(self) -> FrozenSet[int]:
        return frozenset(p for p in range(1, self.length + 1) if self.connection[p])

    def polynomial(self) -> str:
        terms = ["1"] + [f"x^{p}" if p > 1 else "x" for p in sorted(self.taps)]
        return " + ".join(terms)

    def regenerate(self, prefix: Sequence[int], n: int) -> List[int]:
        """Extend the first L bits of prefix to n bits with the recurrence."""
        L = self.length
        if len(prefix) < L:
            raise AnalysisError(f"Need {L} prefix bits to regenerate, got {len(prefix)}")
        out = [int(b) for b in prefix[:L]]
        taps = sorted(self.taps)
        while len(out) < n:
            bit = 0
            for p in taps:
                bit ^= out[-p]
            out.append(bit)
        return out[:n]

    def to_lfsr_state(self, prefix: Sequence[int]) -> LfsrState:
        """A keystream LFSR whose output starts with prefix."""
        if self.length == 0:
            raise AnalysisError("Linear complexity 0: the sequence is all zero")
        if not self.connection[self.length]:
            raise AnalysisError(
                "Connection polynomial has c_L = 0; no Fibonacci LFSR of this length emits it"
            )
        # position L is emitted first, so the fill is the prefix reversed
        fill = tuple(int(b) for b in reversed(prefix[:self.length]))
        return LfsrState(LfsrSpec(self.length, self.taps), fill)


def berlekamp_massey(bits: Union[KeyStream, Sequence[int], str]) -> LinearComplexity:
    seq = [int(b) for b in as_bit_array(bits)]
    if not seq:
        raise AnalysisError("Berlekamp-Massey needs a nonempty bit sequence")
    n_bits = len(seq)
    current = [1] + [0] * n_bits
    previous = [1] + [0] * n_bits
    L, m = 0, -1
    for n in range(n_bits):
        discrepancy = seq[n]
        for i in range(1, L + 1):
            discrepancy ^= current[i] & seq[n - i]
        if not discrepancy:
            continue
        saved = current[:]
        shift = n - m
        for i in range(shift, n_bits + 1):
            current[i] ^= previous[i - shift]
        if 2 * L <= n:
            L = n + 1 - L
            previous = saved
            m = n
    return LinearComplexity(L, tuple(current[:L + 1]))


def berlekamp_massey_report(bits: Union[KeyStream, Sequence[int], str]) -> AttackReport:
    started = time.perf_counter()
    seq = [int(b) for b in as_bit_array(bits)]
    result = berlekamp_massey(seq)
    regenerated = result.regenerate(seq, len(seq)) == seq
    return AttackReport(
        method="bm",
        status=AttackStatus.OK if regenerated else AttackStatus.FAILED,
        summary={
            "L": result.length,
            "taps": sorted(result.taps),
            "polynomial": result.polynomial(),
        },
        details={"bits": len(seq), "regenerates_input": regenerated},
        reason=None if regenerated else "recurrence does not reproduce the input",
        wall_time=time.perf_counter() - started,
    )

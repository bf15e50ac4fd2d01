"""
Correlation attack on the Geffe generator.

Each tap register's output agrees with the keystream on about 3/4 of
the bits, so its seed can be found on its own by trying all 2^L - 1
fills. The selector is then the fill that reproduces the keystream
exactly from the two recovered tap streams.

LFSR output is linear in the initial fill, so candidate streams for a
whole range of seeds come from one matrix product with the unit-fill
basis instead of stepping every register.
"""

import time
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from cipherlab.config import get_config
from cipherlab.cryptanalysis.report import AttackReport, AttackStatus
from cipherlab.keystream import DEFAULT_COMBINER, KeyStream, LfsrSpec, LfsrState, lfsr_keystream
from cipherlab.logger import get_logger

logger = get_logger(__name__)

MIN_BITS_PER_STAGE = 50
CHUNK_ELEMENTS = 1 << 22


def as_bit_array(ks: Union[KeyStream, Sequence[int], str]) -> np.ndarray:
    if isinstance(ks, KeyStream):
        ks = ks.to_bitstring()
    if isinstance(ks, str):
        return np.frombuffer(ks.encode("ascii"), dtype=np.uint8) - ord("0")
    return np.asarray(list(ks), dtype=np.uint8)


def output_basis(spec: LfsrSpec, n: int) -> np.ndarray:
    """Row i: the first n output bits when only register position i+1 is set."""
    rows = []
    for i in range(spec.length):
        fill = tuple(1 if j == i else 0 for j in range(spec.length))
        rows.append(lfsr_keystream(LfsrState(spec, fill), n)[0].digits)
    return np.array(rows, dtype=np.int64)


def seed_bits(values: np.ndarray, length: int) -> np.ndarray:
    """Seed integers as register fills, MSB = position 1."""
    shifts = np.arange(length - 1, -1, -1, dtype=np.int64)
    return (values[:, None] >> shifts[None, :]) & 1


def candidate_streams(basis: np.ndarray, values: np.ndarray) -> np.ndarray:
    return ((seed_bits(values, basis.shape[0]) @ basis) & 1).astype(np.uint8)


def _chunks(length: int, n: int):
    per_chunk = max(1, CHUNK_ELEMENTS // max(n, 1))
    upper = 1 << length
    for lo in range(1, upper, per_chunk):
        yield np.arange(lo, min(lo + per_chunk, upper), dtype=np.int64)


def best_seed_by_agreement(bits: np.ndarray, spec: LfsrSpec) -> Tuple[int, float]:
    """Nonzero seed maximizing agreement with bits; the lowest seed wins ties."""
    n = bits.size
    basis = output_basis(spec, n)
    best_seed, best_agreement = 0, -1.0
    for values in _chunks(spec.length, n):
        agreement = (candidate_streams(basis, values) == bits[None, :]).mean(axis=1)
        k = int(np.argmax(agreement))
        if agreement[k] > best_agreement:
            best_seed, best_agreement = int(values[k]), float(agreement[k])
    return best_seed, best_agreement


def exhaust_selector(
    bits: np.ndarray,
    spec: LfsrSpec,
    stream_a: np.ndarray,
    stream_b: np.ndarray,
    combiner: Tuple[int, ...],
) -> Optional[int]:
    """Lowest selector seed whose combination reproduces bits exactly."""
    table = np.array(combiner, dtype=np.uint8)
    basis = output_basis(spec, bits.size)
    tail = (stream_a.astype(np.int64) << 1) | stream_b
    for values in _chunks(spec.length, bits.size):
        selector = candidate_streams(basis, values).astype(np.int64)
        output = table[(selector << 2) | tail[None, :]]
        hits = np.flatnonzero((output == bits[None, :]).all(axis=1))
        if hits.size:
            return int(values[hits[0]])
    return None


def _stream(spec: LfsrSpec, seed: int, n: int) -> np.ndarray:
    return as_bit_array(lfsr_keystream(LfsrState.from_int(spec, seed), n)[0])


def _seed_entry(spec: LfsrSpec, seed: Optional[int]) -> Optional[dict]:
    if seed is None:
        return None
    return {"int": seed, "bits": LfsrState.from_int(spec, seed).bitstring()}


def correlation_attack_geffe(
    ks: Union[KeyStream, Sequence[int], str],
    spec_a: LfsrSpec,
    spec_b: LfsrSpec,
    spec_sel: LfsrSpec,
    *,
    combiner: Tuple[int, ...] = DEFAULT_COMBINER,
    threshold: Optional[float] = None,
) -> AttackReport:
    """Recover tap_a, tap_b and selector seeds from an observed Geffe keystream."""
    threshold = get_config().attack.correlation_threshold if threshold is None else threshold
    bits = as_bit_array(ks)
    started = time.perf_counter()
    longest = max(spec_a.length, spec_b.length, spec_sel.length)
    if bits.size < MIN_BITS_PER_STAGE * longest:
        logger.warning(
            "Keystream may be too short for a reliable correlation attack",
            bits=int(bits.size),
            recommended=MIN_BITS_PER_STAGE * longest,
        )

    seed_a, agree_a = best_seed_by_agreement(bits, spec_a)
    seed_b, agree_b = best_seed_by_agreement(bits, spec_b)
    scores = {"agreement_tap_a": agree_a, "agreement_tap_b": agree_b}
    details = {"bits": int(bits.size), "threshold": threshold}

    def finish(status, reason=None, seeds=(None, None, None)) -> AttackReport:
        sel, a, b = seeds
        details["seeds"] = {
            "selector": _seed_entry(spec_sel, sel),
            "tap_a": _seed_entry(spec_a, a),
            "tap_b": _seed_entry(spec_b, b),
        }
        report = AttackReport(
            method="correlation",
            status=status,
            key=",".join("-" if s is None else str(s) for s in seeds),
            scores=scores,
            details=details,
            reason=reason,
            wall_time=time.perf_counter() - started,
        )
        logger.info("Correlation attack finished", status=status.value, seconds=round(report.wall_time, 3))
        return report

    # a perfectly matching tap means the selector never switches away from it
    if agree_a == 1.0:
        return finish(AttackStatus.DEGENERATE, "keystream equals the tap_a register output", (None, seed_a, None))
    if agree_b == 1.0:
        return finish(AttackStatus.DEGENERATE, "keystream equals the tap_b register output", (None, None, seed_b))

    weak = [name for name, agree in (("tap_a", agree_a), ("tap_b", agree_b)) if agree < threshold]
    if weak:
        return finish(
            AttackStatus.FAILED,
            f"no seed reaches agreement {threshold} for {', '.join(weak)} - keystream too short or wrong specs",
            (None, seed_a if agree_a >= threshold else None, seed_b if agree_b >= threshold else None),
        )

    n = int(bits.size)
    seed_sel = exhaust_selector(bits, spec_sel, _stream(spec_a, seed_a, n), _stream(spec_b, seed_b, n), combiner)
    if seed_sel is None:
        return finish(AttackStatus.FAILED, "no selector seed reproduces the keystream", (None, seed_a, seed_b))
    return finish(AttackStatus.OK, seeds=(seed_sel, seed_a, seed_b))

"""
Mono-alphabetic substitution breaking.

Start from the key that lines ciphertext letter ranks up with the
reference ranks, then hill-climb over random two-letter swaps of the
decryption key, maximizing the quadgram log-probability of the output.
Each restart ends after ``stall_limit`` consecutive non-improving swaps;
later restarts perturb the best key found so far.
"""

import random
import time
from typing import Optional, Tuple

import numpy as np

from cipherlab.cipher import ALPHABET, SubstitutionAlphabet, mono_invert, mono_substitute
from cipherlab.config import HillClimbBudget, get_config
from cipherlab.cryptanalysis.reference import (
    QuadgramModel,
    english_reference,
    letter_indices,
    quadgram_model,
)
from cipherlab.cryptanalysis.report import AttackReport, AttackStatus
from cipherlab.cryptanalysis.stats import (
    FrequencyProfile,
    character_accuracy,
    chi_squared_text,
    letter_counts,
)
from cipherlab.logger import get_logger

logger = get_logger(__name__)

PERTURB_SWAPS = 3


def rank_alignment_key(ciphertext: str, reference: FrequencyProfile) -> np.ndarray:
    """Decryption table: the k-th most frequent ciphertext letter -> k-th reference letter."""
    counts = letter_counts(ciphertext)
    cipher_rank = sorted(range(26), key=lambda i: (-int(counts[i]), i))
    plain_rank = [ALPHABET.index(c) for c in reference.ranked()]
    dec = np.empty(26, dtype=np.int64)
    for c, p in zip(cipher_rank, plain_rank):
        dec[c] = p
    return dec


def _decryption_alphabet(dec: np.ndarray) -> SubstitutionAlphabet:
    return SubstitutionAlphabet("".join(ALPHABET[int(p)] for p in dec))


def _climb(
    dec: np.ndarray,
    idx: np.ndarray,
    model: QuadgramModel,
    stall_limit: int,
    rng: random.Random,
) -> Tuple[np.ndarray, float, int]:
    score = model.score_indices(dec[idx])
    stall = 0
    steps = 0
    while stall < stall_limit:
        i, j = rng.randrange(26), rng.randrange(26)
        if i == j:
            continue
        dec[i], dec[j] = dec[j], dec[i]
        candidate = model.score_indices(dec[idx])
        steps += 1
        if candidate > score:
            score = candidate
            stall = 0
        else:
            dec[i], dec[j] = dec[j], dec[i]
            stall += 1
    return dec, score, steps


def break_monoalphabetic(
    ciphertext: str,
    reference: Optional[FrequencyProfile] = None,
    model: Optional[QuadgramModel] = None,
    budget: Optional[HillClimbBudget] = None,
    *,
    rng_seed: Optional[int] = None,
    truth: Optional[str] = None,
    min_letters: Optional[int] = None,
) -> AttackReport:
    """Recover a substitution key and plaintext from letter ciphertext."""
    settings = get_config()
    reference = reference or english_reference()
    model = model or quadgram_model()
    budget = budget or settings.attack.budget
    min_letters = min_letters if min_letters is not None else settings.attack.min_mono_letters
    rng = random.Random(settings.default_seed if rng_seed is None else rng_seed)
    started = time.perf_counter()

    idx = letter_indices(ciphertext)
    if idx.size == 0:
        return AttackReport(
            method="break-mono",
            status=AttackStatus.FAILED,
            reason="ciphertext contains no letters",
            wall_time=time.perf_counter() - started,
        )
    if idx.size < min_letters:
        logger.warning(
            "Short ciphertext - substitution breaking is unreliable",
            letters=int(idx.size),
            recommended=min_letters,
        )

    identity = np.arange(26, dtype=np.int64)
    best = rank_alignment_key(ciphertext, reference)
    best_score = model.score_indices(best[idx])
    # plaintext that was never substituted should come back unchanged
    identity_score = model.score_indices(identity[idx])
    if identity_score > best_score:
        best, best_score = identity.copy(), identity_score

    total_steps = 0
    for restart in range(budget.restarts):
        start = best.copy()
        if restart > 0:
            for _ in range(PERTURB_SWAPS):
                i, j = rng.randrange(26), rng.randrange(26)
                start[i], start[j] = start[j], start[i]
        dec, score, steps = _climb(start, idx, model, budget.stall_limit, rng)
        total_steps += steps
        if score > best_score:
            best, best_score = dec.copy(), score
            logger.debug("New best key", restart=restart, score=round(best_score, 2))

    decryption = _decryption_alphabet(best)
    plaintext = mono_substitute(ciphertext, decryption)
    key = mono_invert(decryption)
    quadgrams = max(int(idx.size) - 3, 1)
    report = AttackReport(
        method="break-mono",
        plaintext=plaintext,
        key=key.mapping,
        scores={
            "quadgram": best_score,
            "quadgram_mean": best_score / quadgrams,
            "chi_squared": chi_squared_text(plaintext, reference),
        },
        accuracy=character_accuracy(plaintext, truth) if truth is not None else None,
        details={
            "letters": int(idx.size),
            "restarts": budget.restarts,
            "stall_limit": budget.stall_limit,
            "swaps_tried": total_steps,
        },
        wall_time=time.perf_counter() - started,
    )
    logger.info("Substitution attack finished", letters=int(idx.size), seconds=round(report.wall_time, 2))
    return report

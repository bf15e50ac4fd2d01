"""
Letter statistics: frequency profiles, chi-squared, index of coincidence,
and the scoring helpers used to grade attack output against ground truth.
"""

import math
import string
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from cipherlab.errors import AnalysisError

ALPHABET = string.ascii_uppercase


def letter_counts(text: str) -> np.ndarray:
    """Case-insensitive A..Z counts as a length-26 integer vector."""
    counts = Counter(ch for ch in text.upper() if "A" <= ch <= "Z")
    return np.array([counts.get(c, 0) for c in ALPHABET], dtype=np.int64)


@dataclass(frozen=True)
class FrequencyProfile:
    """Relative letter frequencies; letters absent from the map count as 0."""
    freq: Mapping[str, float]

    def __post_init__(self):
        freq = {k.upper(): float(v) for k, v in dict(self.freq).items()}
        if any(k not in ALPHABET for k in freq):
            raise AnalysisError("Frequency profile keys must be letters A..Z")
        if any(v < 0 for v in freq.values()):
            raise AnalysisError("Frequencies must be non-negative")
        total = math.fsum(freq.values())
        if abs(total - 1.0) > 1e-9:
            raise AnalysisError(f"Frequencies must sum to 1, got {total!r}")
        object.__setattr__(self, "freq", freq)

    @classmethod
    def from_counts(cls, counts: np.ndarray) -> "FrequencyProfile":
        total = int(counts.sum())
        if total == 0:
            raise AnalysisError("Cannot build a frequency profile from zero letters")
        return cls({ALPHABET[i]: int(c) / total for i, c in enumerate(counts) if c})

    def __getitem__(self, letter: str) -> float:
        return self.freq.get(letter.upper(), 0.0)

    def vector(self) -> np.ndarray:
        return np.array([self[c] for c in ALPHABET], dtype=np.float64)

    def ranked(self) -> str:
        """Letters from most to least frequent, ties alphabetical."""
        return "".join(sorted(ALPHABET, key=lambda c: (-self[c], c)))

    def top(self) -> str:
        return self.ranked()[0]

    def to_dict(self) -> dict:
        return {c: self[c] for c in ALPHABET}


def letter_frequency(text: str) -> FrequencyProfile:
    counts = letter_counts(text)
    if counts.sum() == 0:
        raise AnalysisError("Text contains no letters")
    return FrequencyProfile.from_counts(counts)


def chi_squared(observed: FrequencyProfile, reference: FrequencyProfile, n: int) -> float:
    """Sum of (n*obs - n*ref)^2 / (n*ref); lower is closer to the reference."""
    ref = reference.vector()
    if np.any(ref <= 0):
        zero = [ALPHABET[i] for i in np.flatnonzero(ref <= 0)]
        raise AnalysisError(f"Reference profile has zero entries for {''.join(zero)}")
    expected = n * ref
    return float(np.sum((n * observed.vector() - expected) ** 2 / expected))


def chi_squared_text(text: str, reference: FrequencyProfile) -> float:
    counts = letter_counts(text)
    return chi_squared(FrequencyProfile.from_counts(counts), reference, int(counts.sum()))


def index_of_coincidence(text: str) -> float:
    counts = letter_counts(text)
    n = int(counts.sum())
    if n < 2:
        raise AnalysisError(f"Index of coincidence needs at least 2 letters, got {n}")
    # integer numerator keeps the value exactly invariant under relabelling
    numerator = sum(int(c) * (int(c) - 1) for c in counts)
    return numerator / (n * (n - 1))


def character_accuracy(candidate: str, truth: str) -> float:
    """Share of truth's letter positions the candidate reproduces (case-insensitive)."""
    positions = [i for i, ch in enumerate(truth) if ch.isalpha()]
    if not positions:
        positions = list(range(len(truth)))
    if not positions:
        return 1.0 if candidate == truth else 0.0
    hits = sum(
        1 for i in positions
        if i < len(candidate) and candidate[i].lower() == truth[i].lower()
    )
    return hits / len(positions)


def normalize_token(token: str) -> str:
    return token.strip(string.punctuation + "¿¡").lower()


def dictionary_hit_rate(text: str, wordlist: Iterable[str]) -> float:
    """Fraction of whitespace tokens found in the wordlist."""
    words = wordlist if isinstance(wordlist, (set, frozenset)) else set(wordlist)
    tokens = [normalize_token(t) for t in text.split()]
    tokens = [t for t in tokens if t]
    if not tokens:
        return 0.0
    return sum(1 for t in tokens if t in words) / len(tokens)

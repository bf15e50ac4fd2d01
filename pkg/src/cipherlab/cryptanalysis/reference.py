"""
Reference language data derived from the bundled English corpus.

The English letter profile, the quadgram score model and the wordlist
are all computed from ``english_corpus.txt``. ``write_snapshots`` stores
them as JSON (``english_profile.json``, ``quadgrams.json``); loaders use
a snapshot when present and fall back to deriving from the corpus.

Regenerate with:  python scripts/build_reference_data.py
"""

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict, FrozenSet, List, Optional

import numpy as np

from cipherlab.config import data_path
from cipherlab.cryptanalysis.stats import ALPHABET, FrequencyProfile, letter_counts, normalize_token
from cipherlab.errors import ConfigError
from cipherlab.logger import get_logger

logger = get_logger(__name__)

CORPUS_FILE = "english_corpus.txt"
PROFILE_FILE = "english_profile.json"
QUADGRAM_FILE = "quadgrams.json"

_SENTENCE_RE = re.compile(r"(?<=[.!?])\s+")
_Q = 26 ** 4


def letter_indices(text: str) -> np.ndarray:
    """A..Z (case-insensitive) as 0..25, non-letters dropped."""
    raw = np.frombuffer(text.upper().encode("ascii", errors="ignore"), dtype=np.uint8)
    raw = raw[(raw >= 65) & (raw <= 90)]
    return (raw - 65).astype(np.int64)


def quadgram_indices(idx: np.ndarray) -> np.ndarray:
    return idx[:-3] * 17576 + idx[1:-2] * 676 + idx[2:-1] * 26 + idx[3:]


@dataclass(frozen=True)
class QuadgramModel:
    """log10 quadgram probabilities with add-one smoothing over all 26^4 quadgrams."""
    table: np.ndarray
    total: int

    @classmethod
    def from_counts(cls, counts: np.ndarray) -> "QuadgramModel":
        total = int(counts.sum())
        table = np.log10((counts.astype(np.float64) + 1.0) / (total + _Q))
        return cls(table, total)

    @classmethod
    def from_text(cls, text: str) -> "QuadgramModel":
        idx = letter_indices(text)
        counts = np.bincount(quadgram_indices(idx), minlength=_Q) if idx.size >= 4 else np.zeros(_Q, np.int64)
        return cls.from_counts(counts)

    @property
    def floor(self) -> float:
        return float(np.log10(1.0 / (self.total + _Q)))

    def score_indices(self, idx: np.ndarray) -> float:
        if idx.size < 4:
            return 0.0
        return float(self.table[quadgram_indices(idx)].sum())

    def score(self, text: str) -> float:
        return self.score_indices(letter_indices(text))

    def mean_score(self, text: str) -> float:
        """Per-quadgram average; the floor when the text has under 4 letters."""
        idx = letter_indices(text)
        if idx.size < 4:
            return self.floor
        return self.score_indices(idx) / (idx.size - 3)


def _data_dir(data_dir: Optional[Path]) -> Path:
    return Path(data_dir) if data_dir is not None else data_path("").resolve()


@lru_cache(maxsize=4)
def _corpus(data_dir: Path) -> str:
    path = data_dir / CORPUS_FILE
    if not path.exists():
        raise ConfigError("English corpus not found", str(path))
    logger.debug("Loading corpus", path=str(path))
    return path.read_text(encoding="utf-8")


def load_corpus(data_dir: Optional[Path] = None) -> str:
    return _corpus(_data_dir(data_dir))


def split_sentences(text: str) -> List[str]:
    """Sentences ending in . ! or ?, whitespace collapsed."""
    text = " ".join(text.split())
    return [s.strip() for s in _SENTENCE_RE.split(text) if s.strip()]


def corpus_sentences(data_dir: Optional[Path] = None) -> List[str]:
    return split_sentences(load_corpus(data_dir))


def corpus_letters(data_dir: Optional[Path] = None) -> str:
    """The corpus reduced to uppercase letters only."""
    return "".join(ALPHABET[i] for i in letter_indices(load_corpus(data_dir)))


@lru_cache(maxsize=4)
def _reference(data_dir: Path) -> FrequencyProfile:
    snapshot = data_dir / PROFILE_FILE
    if snapshot.exists():
        return FrequencyProfile(json.loads(snapshot.read_text(encoding="utf-8"))["freq"])
    # add-one keeps every letter strictly positive for chi-squared
    return FrequencyProfile.from_counts(letter_counts(_corpus(data_dir)) + 1)


def english_reference(data_dir: Optional[Path] = None) -> FrequencyProfile:
    return _reference(_data_dir(data_dir))


@lru_cache(maxsize=4)
def _quadgrams(data_dir: Path) -> QuadgramModel:
    snapshot = data_dir / QUADGRAM_FILE
    if snapshot.exists():
        doc = json.loads(snapshot.read_text(encoding="utf-8"))
        counts = np.zeros(_Q, dtype=np.int64)
        for gram, count in doc["counts"].items():
            counts[int(quadgram_indices(letter_indices(gram))[0])] = int(count)
        return QuadgramModel.from_counts(counts)
    return QuadgramModel.from_text(_corpus(data_dir))


def quadgram_model(data_dir: Optional[Path] = None) -> QuadgramModel:
    return _quadgrams(_data_dir(data_dir))


@lru_cache(maxsize=4)
def _wordlist(data_dir: Path) -> FrozenSet[str]:
    tokens = (normalize_token(t) for t in _corpus(data_dir).split())
    return frozenset(t for t in tokens if t)


def english_wordlist(data_dir: Optional[Path] = None) -> FrozenSet[str]:
    return _wordlist(_data_dir(data_dir))


def write_snapshots(data_dir: Optional[Path] = None) -> Dict[str, Path]:
    """Write the profile and quadgram JSON snapshots next to the corpus."""
    directory = _data_dir(data_dir)
    corpus = _corpus(directory)
    profile = FrequencyProfile.from_counts(letter_counts(corpus) + 1)
    profile_path = directory / PROFILE_FILE
    profile_path.write_text(
        json.dumps({"source": CORPUS_FILE, "smoothing": "add-one", "freq": profile.to_dict()}, indent=2),
        encoding="utf-8",
    )

    idx = letter_indices(corpus)
    counts = np.bincount(quadgram_indices(idx), minlength=_Q)
    grams = {}
    for q in np.flatnonzero(counts):
        q = int(q)
        gram = ALPHABET[q // 17576] + ALPHABET[(q // 676) % 26] + ALPHABET[(q // 26) % 26] + ALPHABET[q % 26]
        grams[gram] = int(counts[q])
    quad_path = directory / QUADGRAM_FILE
    quad_path.write_text(
        json.dumps({"source": CORPUS_FILE, "smoothing": "add-one", "total": int(counts.sum()), "counts": grams}),
        encoding="utf-8",
    )
    for fn in (_reference, _quadgrams):
        fn.cache_clear()
    return {"profile": profile_path, "quadgrams": quad_path}

"""
Classical letter substitutions.

Tables are case-insensitive and the output keeps the input's case, so
"ATTACK" and "bob is a joker" both encrypt letter for letter. Only ASCII
letters are transformed; everything else passes through.
"""

import json
import random
import string
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Mapping, Tuple, Union

from cipherlab.errors import InvalidSpecError, LexiconError, UnmappedLetterError

ALPHABET = string.ascii_uppercase
IDENTITY_KEY = ALPHABET


class UnmappedPolicy(str, Enum):
    """What char_substitute does with a letter outside the map"""
    PASSTHROUGH = "passthrough"
    REJECT = "reject"


@dataclass(frozen=True)
class SubstitutionAlphabet:
    """Full 26-letter key: position k holds the image of the k-th letter."""
    mapping: str

    def __post_init__(self):
        key = self.mapping.upper()
        object.__setattr__(self, "mapping", key)
        if len(key) != 26 or set(key) != set(ALPHABET):
            raise InvalidSpecError(
                f"Substitution key must contain each of A..Z exactly once, got {self.mapping!r}"
            )

    def table(self) -> Dict[int, str]:
        upper = str.maketrans(ALPHABET, self.mapping)
        lower = str.maketrans(ALPHABET.lower(), self.mapping.lower())
        return {**upper, **lower}

    def image(self, letter: str) -> str:
        return self.mapping[ALPHABET.index(letter.upper())]


def mono_substitute(text: str, key: SubstitutionAlphabet) -> str:
    return text.translate(key.table())


def mono_invert(key: SubstitutionAlphabet) -> SubstitutionAlphabet:
    inverse = [""] * 26
    for k, image in enumerate(key.mapping):
        inverse[ALPHABET.index(image)] = ALPHABET[k]
    return SubstitutionAlphabet("".join(inverse))


def random_alphabet(rng: random.Random) -> SubstitutionAlphabet:
    letters = list(ALPHABET)
    rng.shuffle(letters)
    return SubstitutionAlphabet("".join(letters))


@dataclass(frozen=True)
class CharMap:
    """Partial letter map, injective on its domain; keys and values lowercase."""
    pairs: Mapping[str, str]

    def __post_init__(self):
        norm: Dict[str, str] = {}
        for src, dst in dict(self.pairs).items():
            if not (_is_letter(src) and _is_letter(dst)):
                raise LexiconError(
                    f"Character map entries must be single ASCII letters, got {src!r}={dst!r}"
                )
            if src.lower() in norm:
                raise LexiconError(f"Character map maps {src!r} twice")
            norm[src.lower()] = dst.lower()
        seen: Dict[str, str] = {}
        for src, dst in norm.items():
            if dst in seen:
                raise LexiconError(
                    f"Character map is not injective: {seen[dst]!r} and {src!r} both map to {dst!r}"
                )
            seen[dst] = src
        object.__setattr__(self, "pairs", norm)

    def inverse(self) -> "CharMap":
        return CharMap({dst: src for src, dst in self.pairs.items()})

    def __len__(self) -> int:
        return len(self.pairs)


def _is_letter(ch: str) -> bool:
    return len(ch) == 1 and ch in string.ascii_letters


def char_substitute(
    text: str,
    cmap: CharMap,
    unmapped: UnmappedPolicy = UnmappedPolicy.PASSTHROUGH,
) -> str:
    out = []
    for pos, ch in enumerate(text):
        if not _is_letter(ch):
            out.append(ch)
            continue
        image = cmap.pairs.get(ch.lower())
        if image is None:
            if unmapped == UnmappedPolicy.REJECT:
                raise UnmappedLetterError(ch, pos)
            out.append(ch)
        else:
            out.append(image.upper() if ch.isupper() else image)
    return "".join(out)


def _reject_duplicate_letters(pairs: List[Tuple[str, Any]]) -> Dict[str, Any]:
    out: Dict[str, Any] = {}
    for key, value in pairs:
        if key in out:
            raise InvalidSpecError(f"Character map defines {key!r} twice")
        out[key] = value
    return out


def charmap_load(document: Union[str, bytes, Mapping[str, str]]) -> CharMap:
    """Build a CharMap from a JSON object of single-letter keys and values."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document, object_pairs_hook=_reject_duplicate_letters)
        except json.JSONDecodeError as e:
            raise LexiconError(f"Character map is not valid JSON: {e}") from e
    if not isinstance(document, Mapping):
        raise LexiconError("Character map must be a JSON object")
    if "pairs" in document and isinstance(document["pairs"], Mapping):
        document = document["pairs"]
    return CharMap(dict(document))

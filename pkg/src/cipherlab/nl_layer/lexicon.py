"""
Word-level language mixing (e.g. English -> Spanglish).

Tokens are split on whitespace; leading and trailing punctuation is
stripped for lookup and re-attached afterwards. Lookup is
case-insensitive and a capitalised first letter carries over to the
replacement. Out-of-vocabulary tokens pass through and are reported.
"""

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Mapping, Tuple, Union

from cipherlab.errors import ConfigError, LexiconError

_SPLIT_RE = re.compile(r"(\s+)")
_TOKEN_RE = re.compile(r"^(\W*)(.*?)(\W*)$", re.DOTALL)


class Direction(str, Enum):
    FORWARD = "forward"
    REVERSE = "reverse"


@dataclass(frozen=True)
class MixLexicon:
    """Injective source-word -> mixed-word map with language names."""
    entries: Mapping[str, str]
    source: str = "english"
    mix: str = "mixed"
    _reverse: Mapping[str, str] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        forward: Dict[str, str] = {}
        reverse: Dict[str, str] = {}
        for src, dst in dict(self.entries).items():
            for word in (src, dst):
                if not isinstance(word, str) or not word or any(c.isspace() for c in word):
                    raise LexiconError(f"Lexicon words must be nonempty tokens, got {word!r}")
            s, d = src.lower(), dst.lower()
            if s in forward:
                raise LexiconError(f"Lexicon defines {s!r} twice")
            if d in reverse:
                raise LexiconError(
                    f"Lexicon is not injective: {reverse[d]!r} and {s!r} both map to {d!r}"
                )
            forward[s] = d
            reverse[d] = s
        # a value that is also a key makes reverse mixing ambiguous
        clashes = sorted(set(forward) & set(reverse))
        if clashes:
            raise LexiconError(f"Lexicon values {clashes} are also source words")
        object.__setattr__(self, "entries", forward)
        object.__setattr__(self, "_reverse", reverse)

    def lookup(self, word: str, direction: Direction) -> Union[str, None]:
        table = self.entries if direction == Direction.FORWARD else self._reverse
        return table.get(word.lower())

    def __len__(self) -> int:
        return len(self.entries)

    def to_document(self) -> Dict[str, Any]:
        return {"source": self.source, "mix": self.mix, "entries": dict(self.entries)}


@dataclass(frozen=True)
class OovReport:
    """Tokens that had no lexicon entry, in first-seen order."""
    tokens: Tuple[str, ...]
    total_tokens: int
    oov_count: int

    @property
    def coverage(self) -> float:
        if self.total_tokens == 0:
            return 0.0
        return 1.0 - self.oov_count / self.total_tokens

    def __contains__(self, word: str) -> bool:
        return word in self.tokens


def _reject_duplicates(pairs: List[Tuple[str, Any]]) -> Dict[str, Any]:
    out: Dict[str, Any] = {}
    for key, value in pairs:
        if key in out:
            raise LexiconError(f"Duplicate key {key!r} in lexicon document")
        out[key] = value
    return out


def lexicon_load(document: Union[str, bytes, Mapping[str, Any]]) -> MixLexicon:
    """Validate a lexicon document: {"source", "mix", "entries"} or a bare word map."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document, object_pairs_hook=_reject_duplicates)
        except json.JSONDecodeError as e:
            raise LexiconError(f"Lexicon is not valid JSON: {e}") from e
    if not isinstance(document, Mapping):
        raise LexiconError("Lexicon document must be a JSON object")

    if "entries" in document:
        entries = document["entries"]
        if not isinstance(entries, Mapping):
            raise LexiconError("Lexicon 'entries' must be an object of word pairs")
        return MixLexicon(
            dict(entries),
            source=str(document.get("source", "english")),
            mix=str(document.get("mix", "mixed")),
        )
    if any(not isinstance(v, str) for v in document.values()):
        raise LexiconError("Bare lexicon must map words to words")
    return MixLexicon(dict(document))


def lexicon_load_file(path: Union[str, Path]) -> MixLexicon:
    path = Path(path)
    if not path.exists():
        raise ConfigError("Lexicon file not found", str(path))
    return lexicon_load(path.read_text(encoding="utf-8"))


def _match_case(template: str, word: str) -> str:
    if template[:1].isupper():
        return word[:1].upper() + word[1:]
    return word


def translate_mix(
    text: str,
    lex: MixLexicon,
    direction: Direction = Direction.FORWARD,
) -> Tuple[str, OovReport]:
    out: List[str] = []
    oov: Dict[str, None] = {}
    total = 0
    misses = 0
    for piece in _SPLIT_RE.split(text):
        if not piece or piece.isspace():
            out.append(piece)
            continue
        lead, core, trail = _TOKEN_RE.match(piece).groups()
        if not core:
            out.append(piece)
            continue
        total += 1
        replacement = lex.lookup(core, direction)
        if replacement is None:
            misses += 1
            oov.setdefault(core, None)
            out.append(piece)
        else:
            out.append(lead + _match_case(core, replacement) + trail)
    return "".join(out), OovReport(tuple(oov), total, misses)

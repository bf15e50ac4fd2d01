"""
Worked-example conformance suite behind `cipherlab demo`.

Each check recomputes a worked example end to end and compares it
with the expected string exactly.
"""

from dataclasses import dataclass
from typing import Callable, List

from cipherlab.channel.profiles import get_profile
from cipherlab.cipher import CharMap, SubstitutionAlphabet, char_substitute, mono_invert, mono_substitute
from cipherlab.cryptanalysis import english_reference
from cipherlab.keystream import LfsrState, SecretKey, geffe_combine, lfsr_period, primitive_spec, rc4_keystream
from cipherlab.logger import get_logger
from cipherlab.nl_layer import Direction, MixLexicon, StageTrace, load_pipeline, nl_decrypt, nl_encrypt, translate_mix

logger = get_logger(__name__)

QWERTY_KEY = "QWERTYUIOPASDFGHJKLZXCVBNM"
JOKER_MAP_9 = {"b": "a", "o": "c", "i": "r", "s": "z", "a": "q", "j": "g", "k": "e", "e": "x", "r": "t"}
JOKER_MAP_11 = {**JOKER_MAP_9, "u": "h", "n": "l"}
JOKER_LEXICON = {"is": "es", "a": "un"}
SPANGLISH_PIPELINE = "pipeline_spanglish.json"


@dataclass(frozen=True)
class DemoCheck:
    name: str
    expected: str
    actual: str

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def to_dict(self) -> dict:
        return {"name": self.name, "expected": self.expected, "actual": self.actual, "passed": self.passed}


def _guard(name: str, expected: str, compute: Callable[[], str]) -> DemoCheck:
    try:
        actual = compute()
    except Exception as e:  # a crash is a failed check, not an aborted demo
        logger.error("Demo check raised", check=name, error=str(e))
        actual = f"<error: {e}>"
    return DemoCheck(name, expected, actual)


def _pipeline_stage(stage: str) -> str:
    trace = StageTrace()
    nl_encrypt("bob is a joker", load_pipeline(SPANGLISH_PIPELINE), trace=trace)
    return trace.stage_text(stage)


def _pipeline_round_trip() -> str:
    cfg = load_pipeline(SPANGLISH_PIPELINE)
    return nl_decrypt(nl_encrypt("bob is a joker", cfg), cfg)


def run_conformance() -> List[DemoCheck]:
    key = SubstitutionAlphabet(QWERTY_KEY)
    lexicon = MixLexicon(JOKER_LEXICON)
    checks = [
        _guard("substitution: ATTACK under the QWERTY key", "QZZQEA",
               lambda: mono_substitute("ATTACK", key)),
        _guard("substitution: inverse key restores ATTACK", "ATTACK",
               lambda: mono_substitute("QZZQEA", mono_invert(key))),
        _guard("character map: 9 pairs on the English sentence", "aca rz q gcext",
               lambda: char_substitute("bob is a joker", CharMap(JOKER_MAP_9))),
        _guard("character map: 11 pairs on the mixed sentence", "aca xz hl gcext",
               lambda: char_substitute("bob es un joker", CharMap(JOKER_MAP_11))),
        _guard("lexicon: forward mix", "bob es un joker",
               lambda: translate_mix("bob is a joker", lexicon, Direction.FORWARD)[0]),
        _guard("lexicon: out-of-vocabulary words", "bob,joker",
               lambda: ",".join(translate_mix("bob is a joker", lexicon, Direction.FORWARD)[1].tokens)),
        _guard("lexicon: reverse mix", "bob is a joker",
               lambda: translate_mix("bob es un joker", lexicon, Direction.REVERSE)[0]),
        _guard("pipeline: text after mix and charsub", "aca xz hl gcext",
               lambda: _pipeline_stage("charsub")),
        _guard("pipeline: decrypt restores the native text", "bob is a joker", _pipeline_round_trip),
        _guard("geffe: combiner rows 000..111", "01010011",
               lambda: "".join(str(geffe_combine(r >> 2 & 1, r >> 1 & 1, r & 1)) for r in range(8))),
        _guard("rc4: key \"Key\", 10 bytes", "EB9F7781B734CA72A719",
               lambda: rc4_keystream(SecretKey(b"Key"), 10).to_hex()),
        _guard("rc4: key \"Wiki\", 6 bytes", "6044DB6D41B7",
               lambda: rc4_keystream(SecretKey(b"Wiki"), 6).to_hex()),
        _guard("lfsr: primitive periods for L = 3, 4, 5", "7,15,31",
               lambda: ",".join(str(lfsr_period(LfsrState.from_int(primitive_spec(L), 1))) for L in (3, 4, 5))),
        _guard("weak-wep profile: rc4 drop", "0",
               lambda: str(get_profile("weak-wep").pipeline_config().generator.drop)),
        _guard("english corpus: most frequent letter", "E",
               lambda: english_reference().top()),
    ]
    logger.info("Demo finished", passed=sum(c.passed for c in checks), total=len(checks))
    return checks

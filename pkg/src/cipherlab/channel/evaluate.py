"""
Evaluation harness: does language mixing make substitution breaking harder?

Each trial samples sentences from the corpus, builds a plain arm and a
mixed arm (lexicon, then optional character map), encrypts both with the
same random substitution key and breaks both with the same attack seed.
Scores are character accuracy against each arm's own pre-substitution
text and the share of output tokens that are English dictionary words.
"""

import json
import random
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from joblib import Parallel, delayed

from cipherlab.cipher import CharMap, char_substitute, mono_substitute, random_alphabet
from cipherlab.config import EvaluationSettings, HillClimbBudget, get_config
from cipherlab.cryptanalysis import break_monoalphabetic, dictionary_hit_rate, english_wordlist
from cipherlab.errors import CorpusTooSmallError
from cipherlab.logger import get_logger
from cipherlab.nl_layer import Direction, MixLexicon, translate_mix

logger = get_logger(__name__)

MIN_SENTENCES = 20
MIN_TRIALS = 10


@dataclass
class ArmSummary:
    accuracies: List[float]
    hit_rates: List[float]

    @property
    def median_accuracy(self) -> float:
        return float(np.median(self.accuracies))

    @property
    def median_hit_rate(self) -> float:
        return float(np.median(self.hit_rates))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "median_accuracy": round(self.median_accuracy, 4),
            "median_dictionary_hit_rate": round(self.median_hit_rate, 4),
            "accuracies": [round(a, 4) for a in self.accuracies],
            "dictionary_hit_rates": [round(h, 4) for h in self.hit_rates],
        }


@dataclass
class ComparisonReport:
    trials: int
    seed: int
    plain: ArmSummary
    mixed: ArmSummary
    lexicon_entries: int
    charmap_pairs: int
    coverage: float
    reproduce: str
    per_trial: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def difference(self) -> Dict[str, float]:
        """Plain minus mixed; positive means mixing hurt the attacker."""
        return {
            "accuracy": self.plain.median_accuracy - self.mixed.median_accuracy,
            "dictionary_hit_rate": self.plain.median_hit_rate - self.mixed.median_hit_rate,
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "lexicon_entries": self.lexicon_entries,
            "charmap_pairs": self.charmap_pairs,
            "lexicon_coverage": round(self.coverage, 4),
            "plain": self.plain.to_dict(),
            "mixed": self.mixed.to_dict(),
            "difference": {k: round(v, 4) for k, v in self.difference.items()},
            "reproduce": self.reproduce,
            "per_trial": self.per_trial,
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def sample_text(sentences: Sequence[str], letters: int, rng: random.Random) -> str:
    """Random sentences, in random order, until the text has at least `letters` letters."""
    chosen: List[str] = []
    count = 0
    for i in rng.sample(range(len(sentences)), len(sentences)):
        chosen.append(sentences[i])
        count += sum(1 for ch in sentences[i] if ch.isascii() and ch.isalpha())
        if count >= letters:
            break
    return " ".join(chosen)


def mix_text(text: str, lexicon: Optional[MixLexicon], charmap: Optional[CharMap]) -> str:
    if lexicon is not None and len(lexicon):
        text, _ = translate_mix(text, lexicon, Direction.FORWARD)
    if charmap is not None and len(charmap):
        text = char_substitute(text, charmap)
    return text


def run_trial(
    index: int,
    sentences: Sequence[str],
    lexicon: Optional[MixLexicon],
    charmap: Optional[CharMap],
    sample_letters: int,
    budget: HillClimbBudget,
    seed: int,
) -> Dict[str, Any]:
    """One trial; a pure function of its arguments."""
    rng = random.Random(f"{seed}:{index}")
    plain = sample_text(sentences, sample_letters, rng)
    mixed = mix_text(plain, lexicon, charmap)
    key = random_alphabet(rng)
    attack_seed = rng.randrange(2 ** 31)
    wordlist = english_wordlist()

    result: Dict[str, Any] = {"trial": index, "key": key.mapping}
    for arm, text in (("plain", plain), ("mixed", mixed)):
        report = break_monoalphabetic(
            mono_substitute(text, key), budget=budget, rng_seed=attack_seed, truth=text,
        )
        result[arm] = {
            "accuracy": report.accuracy,
            "dictionary_hit_rate": dictionary_hit_rate(report.plaintext, wordlist),
        }
    logger.info("Evaluation trial finished", trial=index,
                plain_hits=round(result["plain"]["dictionary_hit_rate"], 3),
                mixed_hits=round(result["mixed"]["dictionary_hit_rate"], 3))
    return result


def evaluate_nl_layer(
    corpus: Sequence[str],
    lexicon: Optional[MixLexicon] = None,
    charmap: Optional[CharMap] = None,
    *,
    trials: Optional[int] = None,
    rng_seed: Optional[int] = None,
    settings: Optional[EvaluationSettings] = None,
    lexicon_ref: Optional[str] = None,
    charmap_ref: Optional[str] = None,
) -> ComparisonReport:
    """Compare substitution breaking on plain and language-mixed text."""
    config = get_config()
    settings = settings or config.evaluation
    trials = settings.trials if trials is None else trials
    seed = config.default_seed if rng_seed is None else rng_seed
    sentences = [s for s in corpus if s.strip()]
    if len(sentences) < MIN_SENTENCES:
        raise CorpusTooSmallError(
            f"Evaluation corpus needs at least {MIN_SENTENCES} sentences, got {len(sentences)}"
        )
    if trials < MIN_TRIALS:
        raise CorpusTooSmallError(f"Evaluation needs at least {MIN_TRIALS} trials, got {trials}")

    coverage = 0.0
    if lexicon is not None and len(lexicon):
        _, oov = translate_mix(" ".join(sentences), lexicon, Direction.FORWARD)
        coverage = oov.coverage

    logger.info("Starting evaluation", trials=trials, seed=seed, n_jobs=settings.n_jobs)
    per_trial = Parallel(n_jobs=settings.n_jobs)(
        delayed(run_trial)(i, sentences, lexicon, charmap, settings.sample_letters, settings.budget, seed)
        for i in range(trials)
    )
    per_trial = sorted(per_trial, key=lambda r: r["trial"])

    def arm(name: str) -> ArmSummary:
        return ArmSummary(
            [r[name]["accuracy"] for r in per_trial],
            [r[name]["dictionary_hit_rate"] for r in per_trial],
        )

    command = ["cipherlab", "evaluate"]
    if lexicon_ref:
        command += ["--lexicon", lexicon_ref]
    if charmap_ref:
        command += ["--charmap", charmap_ref]
    command += ["--trials", str(trials), "--seed", str(seed)]

    return ComparisonReport(
        trials=trials,
        seed=seed,
        plain=arm("plain"),
        mixed=arm("mixed"),
        lexicon_entries=len(lexicon) if lexicon is not None else 0,
        charmap_pairs=len(charmap) if charmap is not None else 0,
        coverage=coverage,
        reproduce=" ".join(command),
        per_trial=per_trial,
    )

"""Attacks on stream and substitution ciphers, and the statistics behind them."""

from cipherlab.cryptanalysis.berlekamp_massey import (
    LinearComplexity,
    berlekamp_massey,
    berlekamp_massey_report,
)
from cipherlab.cryptanalysis.correlation import best_seed_by_agreement, correlation_attack_geffe
from cipherlab.cryptanalysis.monoalpha import break_monoalphabetic, rank_alignment_key
from cipherlab.cryptanalysis.reference import (
    QuadgramModel,
    corpus_sentences,
    english_reference,
    english_wordlist,
    load_corpus,
    quadgram_model,
    split_sentences,
    write_snapshots,
)
from cipherlab.cryptanalysis.replay import (
    ReplayFlag,
    ReplayReason,
    detect_replay,
    frame_digest,
    replay_report,
)
from cipherlab.cryptanalysis.report import AttackReport, AttackStatus, Candidate
from cipherlab.cryptanalysis.reuse import (
    keystream_reuse_attack,
    plausible_fraction,
    recover_keystream_from_depth,
)
from cipherlab.cryptanalysis.stats import (
    FrequencyProfile,
    character_accuracy,
    chi_squared,
    chi_squared_text,
    dictionary_hit_rate,
    index_of_coincidence,
    letter_frequency,
)

__all__ = [
    "AttackReport",
    "AttackStatus",
    "Candidate",
    "FrequencyProfile",
    "LinearComplexity",
    "QuadgramModel",
    "ReplayFlag",
    "ReplayReason",
    "berlekamp_massey",
    "berlekamp_massey_report",
    "best_seed_by_agreement",
    "break_monoalphabetic",
    "character_accuracy",
    "chi_squared",
    "chi_squared_text",
    "corpus_sentences",
    "correlation_attack_geffe",
    "detect_replay",
    "dictionary_hit_rate",
    "english_reference",
    "english_wordlist",
    "frame_digest",
    "index_of_coincidence",
    "keystream_reuse_attack",
    "letter_frequency",
    "load_corpus",
    "plausible_fraction",
    "quadgram_model",
    "rank_alignment_key",
    "recover_keystream_from_depth",
    "replay_report",
    "split_sentences",
    "write_snapshots",
]

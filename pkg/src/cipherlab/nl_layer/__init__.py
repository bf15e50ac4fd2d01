"""Natural-language obfuscation layer over a stream cipher."""

from cipherlab.nl_layer.keys import (
    ParallelKey,
    ReuseVerdict,
    SessionLog,
    derive_parallel_key,
    issue_keystream,
    key_reuse_guard,
    keystream_identifier,
)
from cipherlab.nl_layer.lexicon import (
    Direction,
    MixLexicon,
    OovReport,
    lexicon_load,
    lexicon_load_file,
    translate_mix,
)
from cipherlab.nl_layer.pipeline import (
    STAGE_ORDER,
    PipelineConfig,
    Stage,
    StageTrace,
    StreamMode,
    load_pipeline,
    nl_decrypt,
    nl_encrypt,
    pre_encode,
)

__all__ = [
    "Direction",
    "MixLexicon",
    "OovReport",
    "ParallelKey",
    "PipelineConfig",
    "ReuseVerdict",
    "STAGE_ORDER",
    "SessionLog",
    "Stage",
    "StageTrace",
    "StreamMode",
    "derive_parallel_key",
    "issue_keystream",
    "key_reuse_guard",
    "keystream_identifier",
    "lexicon_load",
    "lexicon_load_file",
    "load_pipeline",
    "nl_decrypt",
    "nl_encrypt",
    "pre_encode",
    "translate_mix",
]

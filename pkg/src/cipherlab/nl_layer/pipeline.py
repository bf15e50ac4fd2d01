"""
Natural-language layer composed over a stream cipher.

Encryption runs the stages in a fixed order:

    mix -> charsub -> encode (UTF-8) -> parallel-xor -> stream-xor

and decryption undoes them in reverse. A trace callback receives each
intermediate value, which is how the CLI --trace file and the
stage-order tests observe the pipeline.
"""

import json
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, Field, ValidationError, model_validator

from cipherlab.cipher import (
    CharMap,
    SelfSyncSpec,
    UnmappedPolicy,
    char_substitute,
    charmap_load,
    cycle_xor,
    selfsync_decrypt,
    selfsync_encrypt,
    xor_decrypt,
    xor_encrypt,
)
from cipherlab.config import (
    GeneratorConfig,
    Rc4GeneratorConfig,
    data_path,
)
from cipherlab.errors import ConfigError, CryptoMismatchError, InvalidSpecError
from cipherlab.keystream import KeyStream
from cipherlab.logger import get_logger
from cipherlab.nl_layer.keys import ParallelKey, derive_parallel_key
from cipherlab.nl_layer.lexicon import Direction, MixLexicon, lexicon_load_file, translate_mix

logger = get_logger(__name__)

TraceHook = Callable[[str, Union[str, bytes]], None]


class Stage(str, Enum):
    MIX = "mix"
    CHARSUB = "charsub"
    ENCODE = "encode"
    PARALLEL_XOR = "parallel-xor"
    STREAM_XOR = "stream-xor"


STAGE_ORDER: Tuple[Stage, ...] = tuple(Stage)


class StreamMode(str, Enum):
    SYNCHRONOUS = "synchronous"
    SELF_SYNCHRONOUS = "self-synchronous"


@dataclass(frozen=True)
class PipelineConfig:
    stages: Tuple[Stage, ...]
    generator: GeneratorConfig
    lexicon: Optional[MixLexicon] = None
    charmap: Optional[CharMap] = None
    parallel_key: Optional[ParallelKey] = None
    unmapped: UnmappedPolicy = UnmappedPolicy.PASSTHROUGH
    stream_mode: StreamMode = StreamMode.SYNCHRONOUS
    selfsync_window: int = 4
    selfsync_iv: Optional[bytes] = None

    def __post_init__(self):
        stages = tuple(Stage(s) for s in self.stages)
        object.__setattr__(self, "stages", stages)
        if len(set(stages)) != len(stages):
            raise InvalidSpecError(f"Duplicate pipeline stages: {[s.value for s in stages]}")
        if list(stages) != [s for s in STAGE_ORDER if s in stages]:
            raise InvalidSpecError(
                "Pipeline stages must follow mix -> charsub -> encode -> parallel-xor -> stream-xor"
            )
        if Stage.STREAM_XOR not in stages:
            raise InvalidSpecError("Pipeline must include stream-xor")
        if Stage.ENCODE not in stages:
            raise InvalidSpecError("Pipeline must encode text before the XOR stages")
        for stage, data in (
            (Stage.MIX, self.lexicon),
            (Stage.CHARSUB, self.charmap),
            (Stage.PARALLEL_XOR, self.parallel_key),
        ):
            if (stage in stages) != (data is not None):
                raise InvalidSpecError(
                    f"Stage {stage.value!r} must be present exactly when its data is supplied"
                )
        if self.stream_mode == StreamMode.SELF_SYNCHRONOUS:
            if not isinstance(self.generator, Rc4GeneratorConfig):
                raise InvalidSpecError("Self-synchronous mode needs an rc4 generator for its key")
            self.selfsync_spec()

    def has(self, stage: Stage) -> bool:
        return stage in self.stages

    def selfsync_spec(self) -> SelfSyncSpec:
        iv = self.selfsync_iv if self.selfsync_iv is not None else bytes(self.selfsync_window)
        return SelfSyncSpec(self.selfsync_window, iv, self.generator.secret())

    def with_generator(self, generator: GeneratorConfig) -> "PipelineConfig":
        return replace(self, generator=generator)


def _emit(trace: Optional[TraceHook], stage: str, value: Union[str, bytes]) -> None:
    if trace is not None:
        trace(stage, value)


def _running_key(cfg: PipelineConfig, n: int, keystream: Optional[Union[KeyStream, bytes]]) -> Union[KeyStream, bytes]:
    if keystream is not None:
        return keystream
    return cfg.generator.keystream(n)


def pre_encode(plaintext: str, cfg: PipelineConfig, trace: Optional[TraceHook] = None) -> str:
    """The text stages: mix, then charsub."""
    text = plaintext
    if cfg.has(Stage.MIX):
        text, oov = translate_mix(text, cfg.lexicon, Direction.FORWARD)
        logger.debug("Mix stage", coverage=round(oov.coverage, 3), oov=len(oov.tokens))
        _emit(trace, Stage.MIX.value, text)
    if cfg.has(Stage.CHARSUB):
        text = char_substitute(text, cfg.charmap, cfg.unmapped)
        _emit(trace, Stage.CHARSUB.value, text)
    return text


def nl_encrypt(
    plaintext: str,
    cfg: PipelineConfig,
    *,
    keystream: Optional[Union[KeyStream, bytes]] = None,
    trace: Optional[TraceHook] = None,
) -> bytes:
    text = pre_encode(plaintext, cfg, trace)
    data = text.encode("utf-8")
    _emit(trace, Stage.ENCODE.value, data)
    if cfg.has(Stage.PARALLEL_XOR):
        data = cycle_xor(data, cfg.parallel_key.secret)
        _emit(trace, Stage.PARALLEL_XOR.value, data)
    if cfg.stream_mode == StreamMode.SELF_SYNCHRONOUS:
        data = selfsync_encrypt(data, cfg.selfsync_spec())
    else:
        data = xor_encrypt(data, _running_key(cfg, len(data), keystream))
    _emit(trace, Stage.STREAM_XOR.value, data)
    return data


def nl_decrypt(
    ct: bytes,
    cfg: PipelineConfig,
    *,
    keystream: Optional[Union[KeyStream, bytes]] = None,
    trace: Optional[TraceHook] = None,
) -> str:
    if cfg.stream_mode == StreamMode.SELF_SYNCHRONOUS:
        data = selfsync_decrypt(ct, cfg.selfsync_spec())
    else:
        data = xor_decrypt(ct, _running_key(cfg, len(ct), keystream))
    _emit(trace, Stage.STREAM_XOR.value, data)
    if cfg.has(Stage.PARALLEL_XOR):
        data = cycle_xor(data, cfg.parallel_key.secret)
        _emit(trace, Stage.PARALLEL_XOR.value, data)
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise CryptoMismatchError(
            f"Decrypted bytes are not valid UTF-8 at offset {e.start} - key or config mismatch"
        ) from e
    _emit(trace, Stage.ENCODE.value, text)
    if cfg.has(Stage.CHARSUB):
        text = char_substitute(text, cfg.charmap.inverse(), cfg.unmapped)
        _emit(trace, Stage.CHARSUB.value, text)
    if cfg.has(Stage.MIX):
        text, _ = translate_mix(text, cfg.lexicon, Direction.REVERSE)
        _emit(trace, Stage.MIX.value, text)
    return text


class StageTrace:
    """Collects trace events; writes JSON Lines {stage, text, hex}."""

    def __init__(self, direction: str = "encrypt"):
        self.direction = direction
        self.events: List[Dict[str, Any]] = []

    def __call__(self, stage: str, value: Union[str, bytes]) -> None:
        if isinstance(value, bytes):
            text = value.decode("utf-8", errors="replace")
            raw = value
        else:
            text = value
            raw = value.encode("utf-8")
        self.events.append({
            "direction": self.direction,
            "stage": stage,
            "text": text,
            "hex": raw.hex(),
        })

    def stage_text(self, stage: Union[Stage, str]) -> str:
        name = Stage(stage).value
        for event in self.events:
            if event["stage"] == name:
                return event["text"]
        raise KeyError(name)

    def write_jsonl(self, path: Union[str, Path]) -> None:
        with open(path, "a", encoding="utf-8") as f:
            for event in self.events:
                f.write(json.dumps(event) + "\n")


# ============================================================================
# Pipeline files
# ============================================================================


class ParallelKeyFile(BaseModel):
    phrase: Optional[str] = None
    hex: Optional[str] = None

    @model_validator(mode="after")
    def _one_source(self) -> "ParallelKeyFile":
        if (self.phrase is None) == (self.hex is None):
            raise ValueError("parallel_key needs exactly one of 'phrase' or 'hex'")
        return self

    def build(self) -> ParallelKey:
        if self.phrase is not None:
            return derive_parallel_key(self.phrase)
        return ParallelKey(bytes.fromhex(self.hex))


class PipelineFile(BaseModel):
    """JSON pipeline config naming stages, data files and the generator"""
    stages: List[Stage]
    generator: GeneratorConfig
    lexicon: Optional[str] = None
    charmap: Optional[str] = None
    parallel_key: Optional[ParallelKeyFile] = None
    unmapped: UnmappedPolicy = UnmappedPolicy.PASSTHROUGH
    stream_mode: StreamMode = StreamMode.SYNCHRONOUS
    selfsync_window: int = Field(default=4, ge=1)
    selfsync_iv_hex: Optional[str] = None


def resolve_data_file(name: str, base_dir: Optional[Path]) -> Path:
    """Relative to the referencing file first, then the data directory."""
    candidate = Path(name)
    if candidate.is_absolute():
        return candidate
    if base_dir is not None and (base_dir / candidate).exists():
        return base_dir / candidate
    bundled = data_path(name)
    if bundled.exists():
        return bundled
    return (base_dir or Path.cwd()) / candidate


def build_pipeline(doc: PipelineFile, base_dir: Optional[Path] = None) -> PipelineConfig:
    lexicon = None
    if doc.lexicon is not None:
        lexicon = lexicon_load_file(resolve_data_file(doc.lexicon, base_dir))
    charmap = None
    if doc.charmap is not None:
        path = resolve_data_file(doc.charmap, base_dir)
        if not path.exists():
            raise ConfigError("Character map file not found", str(path))
        charmap = charmap_load(path.read_text(encoding="utf-8"))
    try:
        parallel_key = doc.parallel_key.build() if doc.parallel_key else None
        iv = bytes.fromhex(doc.selfsync_iv_hex) if doc.selfsync_iv_hex else None
    except ValueError as e:
        raise InvalidSpecError(f"Invalid hex in pipeline config: {e}") from e
    return PipelineConfig(
        stages=tuple(doc.stages),
        generator=doc.generator,
        lexicon=lexicon,
        charmap=charmap,
        parallel_key=parallel_key,
        unmapped=doc.unmapped,
        stream_mode=doc.stream_mode,
        selfsync_window=doc.selfsync_window,
        selfsync_iv=iv,
    )


def load_pipeline(source: Union[str, Path, Dict[str, Any]], base_dir: Optional[Path] = None) -> PipelineConfig:
    """Load a pipeline config from a JSON file path or an already-parsed document."""
    if isinstance(source, dict):
        document = source
    else:
        path = Path(source)
        if not path.exists():
            path = data_path(str(source))
        if not path.exists():
            raise ConfigError("Pipeline config not found", str(source))
        try:
            document = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise ConfigError(f"Pipeline config is not valid JSON ({e})", str(path)) from e
        base_dir = base_dir or path.parent
    try:
        doc = PipelineFile.model_validate(document)
    except ValidationError as e:
        err = e.errors()[0]
        loc = ".".join(str(p) for p in err.get("loc", ()))
        raise InvalidSpecError(f"Invalid pipeline config: {loc}: {err.get('msg')}") from e
    return build_pipeline(doc, base_dir)

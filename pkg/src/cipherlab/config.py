"""
Centralized Configuration Management for CipherLab

Features:
- Environment-based configuration with fallbacks
- Pydantic validation for settings and generator specs
- Configuration caching
- Validation report for the `config show` command

Loads, lowest priority first:
1. Built-in defaults
2. YAML settings file (config/cipherlab.yml or $CIPHERLAB_CONFIG)
3. Environment variables (CIPHERLAB_DATA, CIPHERLAB_SEED, LOG_LEVEL, LOG_FORMAT, ENVIRONMENT)
"""

import hashlib
import json
import os
import random
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Optional, Union

import yaml
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    TypeAdapter,
    ValidationError,
    field_validator,
    model_validator,
)

from cipherlab.errors import ConfigError, InvalidSpecError
from cipherlab.keystream import (
    GeffeSpec,
    KeyStream,
    LfsrSpec,
    LfsrState,
    SecretKey,
    geffe_keystream,
    lfsr_keystream,
    parse_combiner,
    rc4_keystream,
)
from cipherlab.logger import get_logger

logger = get_logger(__name__)

DEFAULT_SEED = 1337
PACKAGE_DATA_DIR = Path(__file__).parent / "data"
DEFAULT_SETTINGS_FILE = Path("config/cipherlab.yml")


class Environment(str, Enum):
    """Deployment environment"""
    DEVELOPMENT = "development"
    CI = "ci"
    TEST = "test"


# ============================================================================
# Generator specs
# ============================================================================


class LfsrGeneratorConfig(BaseModel):
    """LFSR as {length, taps[], seed-bits}"""
    model_config = ConfigDict(frozen=True)

    kind: Literal["lfsr"] = "lfsr"
    length: int = Field(..., ge=1, le=64)
    taps: List[int] = Field(..., min_length=1)
    seed: str = Field(..., description="Register fill, position 1 first")

    @model_validator(mode="after")
    def _check_state(self) -> "LfsrGeneratorConfig":
        try:
            self.build()
        except InvalidSpecError as e:
            raise ValueError(str(e)) from e
        return self

    def build(self) -> LfsrState:
        return LfsrState.from_bitstring(LfsrSpec(self.length, frozenset(self.taps)), self.seed)

    def keystream(self, n_bytes: int) -> KeyStream:
        return lfsr_keystream(self.build(), 8 * n_bytes)[0]

    def reseed(self, rng: random.Random) -> "LfsrGeneratorConfig":
        value = rng.randrange(1, 2 ** self.length)
        return self.model_copy(update={"seed": format(value, f"0{self.length}b")})


class GeffeGeneratorConfig(BaseModel):
    """Geffe as three LFSR specs + optional 8-bit combiner table"""
    model_config = ConfigDict(frozen=True)

    kind: Literal["geffe"] = "geffe"
    selector: LfsrGeneratorConfig
    tap_a: LfsrGeneratorConfig
    tap_b: LfsrGeneratorConfig
    combiner: Optional[str] = Field(default=None, description="Rows 000..111 as 8 bits")

    @model_validator(mode="after")
    def _check_spec(self) -> "GeffeGeneratorConfig":
        try:
            self.build()
        except InvalidSpecError as e:
            raise ValueError(str(e)) from e
        return self

    def build(self) -> GeffeSpec:
        kwargs: Dict[str, Any] = {}
        if self.combiner is not None:
            kwargs["combiner"] = parse_combiner(self.combiner)
        return GeffeSpec(self.selector.build(), self.tap_a.build(), self.tap_b.build(), **kwargs)

    def keystream(self, n_bytes: int) -> KeyStream:
        return geffe_keystream(self.build(), 8 * n_bytes)[0]

    def reseed(self, rng: random.Random) -> "GeffeGeneratorConfig":
        return self.model_copy(update={
            "selector": self.selector.reseed(rng),
            "tap_a": self.tap_a.reseed(rng),
            "tap_b": self.tap_b.reseed(rng),
        })


class Rc4GeneratorConfig(BaseModel):
    """RC4 as {key-hex, drop}"""
    model_config = ConfigDict(frozen=True)

    kind: Literal["rc4"] = "rc4"
    key_hex: str
    drop: int = Field(default=0, ge=0)

    @field_validator("key_hex")
    @classmethod
    def _check_key(cls, v: str) -> str:
        try:
            SecretKey.from_hex(v)
        except InvalidSpecError as e:
            raise ValueError(str(e)) from e
        return v.lower()

    def secret(self) -> SecretKey:
        return SecretKey.from_hex(self.key_hex)

    def keystream(self, n_bytes: int) -> KeyStream:
        return rc4_keystream(self.secret(), n_bytes, self.drop)

    def reseed(self, rng: random.Random) -> "Rc4GeneratorConfig":
        size = len(bytes.fromhex(self.key_hex))
        return self.model_copy(update={"key_hex": rng.randbytes(size).hex()})


GeneratorConfig = Annotated[
    Union[LfsrGeneratorConfig, GeffeGeneratorConfig, Rc4GeneratorConfig],
    Field(discriminator="kind"),
]

_generator_adapter: TypeAdapter = TypeAdapter(GeneratorConfig)


def load_generator(data: Dict[str, Any]) -> Union[LfsrGeneratorConfig, GeffeGeneratorConfig, Rc4GeneratorConfig]:
    """Validate a generator spec document"""
    try:
        return _generator_adapter.validate_python(data)
    except ValidationError as e:
        raise InvalidSpecError(f"Invalid generator spec: {_first_error(e)}") from e


def keystream_bytes(generator: BaseModel, n: int) -> bytes:
    """n keystream bytes from any generator kind; bit streams pack MSB-first"""
    return generator.keystream(n).to_bytes()


def generator_digest(generator: BaseModel) -> str:
    """Stable digest of (spec, seed) - never the raw key bytes in logs"""
    canonical = json.dumps(generator.model_dump(mode="json"), sort_keys=True)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _first_error(e: ValidationError) -> str:
    err = e.errors()[0]
    loc = ".".join(str(p) for p in err.get("loc", ()))
    return f"{loc}: {err.get('msg')}" if loc else str(err.get("msg"))


# ============================================================================
# Settings
# ============================================================================


class HillClimbBudget(BaseModel):
    """Restart and stall limits for substitution breaking"""
    restarts: int = Field(default=50, ge=1)
    stall_limit: int = Field(default=2000, ge=1, description="Non-improving swaps before restart")


class AttackSettings(BaseModel):
    budget: HillClimbBudget = Field(default_factory=HillClimbBudget)
    correlation_threshold: float = Field(default=0.70, gt=0.5, lt=1.0)
    printable_threshold: float = Field(default=0.85, gt=0.0, le=1.0)
    min_mono_letters: int = Field(default=200, ge=1)
    depth_min_frames: int = Field(default=3, ge=2)
    default_crib: str = " the "


class EvaluationSettings(BaseModel):
    trials: int = Field(default=10, ge=10)
    sample_letters: int = Field(default=600, ge=200)
    budget: HillClimbBudget = Field(
        default_factory=lambda: HillClimbBudget(restarts=4, stall_limit=800)
    )
    n_jobs: int = Field(default=1, description="joblib worker count")


class CipherLabConfig(BaseModel):
    """Main configuration"""
    model_config = ConfigDict(use_enum_values=True)

    environment: Environment = Field(default=Environment.DEVELOPMENT)
    data_dir: Path = Field(default=PACKAGE_DATA_DIR)
    default_seed: int = Field(default=DEFAULT_SEED)
    log_level: str = Field(default="WARNING")
    log_format: Literal["text", "json"] = "text"
    attack: AttackSettings = Field(default_factory=AttackSettings)
    evaluation: EvaluationSettings = Field(default_factory=EvaluationSettings)

    @field_validator("log_level")
    @classmethod
    def _check_level(cls, v: str) -> str:
        allowed = ["DEBUG", "INFO", "WARNING", "ERROR"]
        if v.upper() not in allowed:
            raise ValueError(f"log_level must be one of {allowed}")
        return v.upper()


def load_settings_file(path: Path) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"Settings file is not valid YAML ({e})", str(path)) from e


def build_config(settings_path: Optional[Path] = None) -> CipherLabConfig:
    """Defaults < settings file < environment"""
    path = settings_path or Path(os.getenv("CIPHERLAB_CONFIG", str(DEFAULT_SETTINGS_FILE)))
    data: Dict[str, Any] = {}
    if path.exists():
        data = load_settings_file(path)
        logger.debug("Loaded settings file", path=str(path))
    elif settings_path is not None:
        raise ConfigError("Settings file not found", str(path))

    env_overrides = {
        "data_dir": os.getenv("CIPHERLAB_DATA"),
        "default_seed": os.getenv("CIPHERLAB_SEED"),
        "log_level": os.getenv("LOG_LEVEL"),
        "log_format": os.getenv("LOG_FORMAT"),
        "environment": os.getenv("ENVIRONMENT"),
    }
    data.update({k: v for k, v in env_overrides.items() if v})

    try:
        return CipherLabConfig(**data)
    except ValidationError as e:
        raise ConfigError(f"Invalid settings: {_first_error(e)}", str(path)) from e


@lru_cache(maxsize=1)
def get_config() -> CipherLabConfig:
    """Cached configuration instance"""
    return build_config()


def data_path(name: str, config: Optional[CipherLabConfig] = None) -> Path:
    """Resolve a bundled data file, honouring CIPHERLAB_DATA"""
    cfg = config or get_config()
    return Path(cfg.data_dir) / name


def validate_config(config: CipherLabConfig) -> List[str]:
    """Human-readable list of configuration issues (empty if fine)"""
    issues = []
    data_dir = Path(config.data_dir)
    if not data_dir.is_dir():
        issues.append(f"Data directory does not exist: {data_dir}")
    else:
        for required in ("english_corpus.txt", "spanglish.json", "profiles.yml"):
            if not (data_dir / required).exists():
                issues.append(f"Missing bundled data file: {required}")
    if config.attack.budget.restarts * config.attack.budget.stall_limit > 10_000_000:
        issues.append("Hill-climb budget is very large - break-mono may run for minutes")
    if config.evaluation.n_jobs == 0:
        issues.append("evaluation.n_jobs = 0 is invalid for joblib; use 1 or -1")
    return issues

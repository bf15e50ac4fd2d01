"""
Channel profiles: which pipeline a session uses and how it manages keys.

Profiles live in ``profiles.yml`` in the data directory:

    profiles:
      weak-wep:
        description: ...
        pipeline: pipeline_plain.json     # file name or inline document
        key_policy: weak-wep
        iv_space: 16777216
        corruption: 0.0
"""

from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from cipherlab.config import Rc4GeneratorConfig, data_path
from cipherlab.errors import ConfigError, InvalidSpecError
from cipherlab.logger import get_logger
from cipherlab.nl_layer import PipelineConfig, load_pipeline

logger = get_logger(__name__)

PROFILES_FILE = "profiles.yml"


class KeyPolicy(str, Enum):
    FRESH = "fresh"
    REUSED = "reused"
    WEAK_WEP = "weak-wep"


class ChannelProfile(BaseModel):
    """How one simulated link encrypts its frames"""
    model_config = ConfigDict(frozen=True)

    name: str
    description: str = ""
    pipeline: Union[str, Dict[str, Any]]
    key_policy: KeyPolicy = KeyPolicy.FRESH
    corruption: float = Field(default=0.0, ge=0.0, le=1.0)
    iv_bytes: int = Field(default=3, ge=1, le=16)
    iv_space: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _check_iv_space(self) -> "ChannelProfile":
        if self.iv_space is not None and self.iv_space > 256 ** self.iv_bytes:
            raise ValueError(f"iv_space {self.iv_space} does not fit in {self.iv_bytes} IV bytes")
        return self

    @property
    def effective_iv_space(self) -> int:
        return self.iv_space if self.iv_space is not None else 256 ** self.iv_bytes

    def pipeline_config(self, base_dir: Optional[Path] = None) -> PipelineConfig:
        cfg = load_pipeline(self.pipeline, base_dir=base_dir)
        if self.key_policy == KeyPolicy.WEAK_WEP and not isinstance(cfg.generator, Rc4GeneratorConfig):
            raise InvalidSpecError(f"Profile {self.name!r}: weak-wep keys need an rc4 generator")
        return cfg

    def with_overrides(self, **changes: Any) -> "ChannelProfile":
        """Copy with fields replaced and re-validated."""
        data = self.model_dump()
        data.update({k: v for k, v in changes.items() if v is not None})
        try:
            return ChannelProfile(**data)
        except ValidationError as e:
            raise InvalidSpecError(f"Invalid profile override: {e.errors()[0].get('msg')}") from e


def load_profiles(path: Optional[Path] = None) -> Dict[str, ChannelProfile]:
    path = Path(path) if path is not None else data_path(PROFILES_FILE)
    if not path.exists():
        raise ConfigError("Channel profiles file not found", str(path))
    try:
        with open(path, "r", encoding="utf-8") as f:
            document = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"Profiles file is not valid YAML ({e})", str(path)) from e

    profiles: Dict[str, ChannelProfile] = {}
    for name, body in (document.get("profiles") or {}).items():
        body = dict(body or {})
        pipeline = body.get("pipeline")
        if isinstance(pipeline, str) and (path.parent / pipeline).exists():
            body["pipeline"] = str(path.parent / pipeline)
        try:
            profiles[name] = ChannelProfile(name=name, **body)
        except ValidationError as e:
            err = e.errors()[0]
            loc = ".".join(str(p) for p in err.get("loc", ()))
            raise ConfigError(f"Invalid profile {name!r}: {loc}: {err.get('msg')}", str(path)) from e
    logger.debug("Loaded channel profiles", count=len(profiles))
    return profiles


def get_profile(name: str, path: Optional[Path] = None) -> ChannelProfile:
    profiles = load_profiles(path)
    if name not in profiles:
        raise ConfigError(f"Unknown channel profile {name!r}; available: {', '.join(sorted(profiles))}")
    return profiles[name]

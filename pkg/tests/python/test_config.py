"""
Unit tests for centralized configuration
Tests settings loading, environment overrides, generator specs and validation
"""

import random

import pytest

from cipherlab.config import (
    DEFAULT_SEED,
    CipherLabConfig,
    Environment,
    GeffeGeneratorConfig,
    LfsrGeneratorConfig,
    Rc4GeneratorConfig,
    build_config,
    data_path,
    generator_digest,
    get_config,
    load_generator,
    validate_config,
)
from cipherlab.errors import ConfigError, InvalidSpecError


class TestEnvironmentEnum:
    """Test Environment enumeration"""

    def test_environment_values(self):
        assert Environment.DEVELOPMENT == "development"
        assert Environment.CI == "ci"
        assert Environment.TEST == "test"


class TestSettings:
    """Test settings layering: defaults < file < environment"""

    def test_defaults(self):
        config = CipherLabConfig()
        assert config.default_seed == DEFAULT_SEED
        assert config.attack.correlation_threshold == 0.70
        assert config.attack.default_crib == " the "
        assert config.evaluation.trials == 10

    def test_repo_settings_file_matches_defaults(self):
        """config/cipherlab.yml restates the built-in defaults"""
        assert get_config().model_dump() == CipherLabConfig().model_dump()

    def test_settings_file(self, tmp_path):
        path = tmp_path / "settings.yml"
        path.write_text("default_seed: 7\nattack:\n  budget:\n    restarts: 3\n", encoding="utf-8")
        config = build_config(path)
        assert config.default_seed == 7
        assert config.attack.budget.restarts == 3
        assert config.attack.budget.stall_limit == 2000

    def test_env_overrides_file(self, tmp_path, monkeypatch):
        path = tmp_path / "settings.yml"
        path.write_text("default_seed: 7\n", encoding="utf-8")
        monkeypatch.setenv("CIPHERLAB_CONFIG", str(path))
        monkeypatch.setenv("CIPHERLAB_SEED", "99")
        monkeypatch.setenv("LOG_LEVEL", "debug")
        config = build_config()
        assert config.default_seed == 99
        assert config.log_level == "DEBUG"

    def test_get_config_is_cached(self):
        assert get_config() is get_config()

    def test_invalid_value(self, tmp_path):
        path = tmp_path / "settings.yml"
        path.write_text("attack:\n  correlation_threshold: 1.5\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="correlation_threshold"):
            build_config(path)

    def test_invalid_yaml(self, tmp_path):
        path = tmp_path / "settings.yml"
        path.write_text("attack: [unclosed\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="YAML"):
            build_config(path)

    def test_missing_explicit_file(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            build_config(tmp_path / "absent.yml")

    def test_data_dir_override(self, monkeypatch, scratch_data_dir):
        monkeypatch.setenv("CIPHERLAB_DATA", str(scratch_data_dir))
        get_config.cache_clear()
        assert data_path("profiles.yml") == scratch_data_dir / "profiles.yml"


class TestValidateConfig:
    """Test the `config show` issue list"""

    def test_bundled_config_is_clean(self):
        assert validate_config(get_config()) == []

    def test_missing_data_dir(self, tmp_path):
        config = CipherLabConfig(data_dir=tmp_path / "nowhere")
        assert any("does not exist" in issue for issue in validate_config(config))

    def test_missing_data_file(self, scratch_data_dir):
        (scratch_data_dir / "spanglish.json").unlink()
        issues = validate_config(CipherLabConfig(data_dir=scratch_data_dir))
        assert issues == ["Missing bundled data file: spanglish.json"]

    def test_zero_jobs(self):
        config = CipherLabConfig(evaluation={"n_jobs": 0})
        assert any("n_jobs" in issue for issue in validate_config(config))


class TestGeneratorSpecs:
    """Test the tagged generator union"""

    def test_kinds(self):
        assert isinstance(load_generator({"kind": "rc4", "key_hex": "4B6579"}), Rc4GeneratorConfig)
        assert isinstance(load_generator({"kind": "lfsr", "length": 3, "taps": [3, 2], "seed": "101"}),
                          LfsrGeneratorConfig)

    def test_key_hex_normalised(self):
        assert load_generator({"kind": "rc4", "key_hex": "4B6579"}).key_hex == "4b6579"

    @pytest.mark.parametrize("spec", [
        {"kind": "rc4", "key_hex": "xyz"},
        {"kind": "rc4", "key_hex": "4b6579", "drop": -1},
        {"kind": "lfsr", "length": 3, "taps": [2], "seed": "101"},
        {"kind": "lfsr", "length": 3, "taps": [3, 2], "seed": "000"},
        {"kind": "des", "key_hex": "00"},
    ])
    def test_invalid_specs(self, spec):
        with pytest.raises(InvalidSpecError):
            load_generator(spec)

    def test_geffe_lengths_checked(self):
        register = {"length": 5, "taps": [5, 3], "seed": "10110"}
        with pytest.raises(InvalidSpecError, match="distinct"):
            load_generator({"kind": "geffe", "selector": register, "tap_a": register,
                            "tap_b": {"length": 7, "taps": [7, 6], "seed": "1100101"}})

    def test_reseed_keeps_shape(self):
        rng = random.Random(1)
        rc4 = Rc4GeneratorConfig(key_hex="4b6579", drop=256)
        fresh = rc4.reseed(rng)
        assert len(fresh.key_hex) == len(rc4.key_hex)
        assert fresh.drop == 256
        geffe = load_generator({
            "kind": "geffe",
            "selector": {"length": 5, "taps": [5, 3], "seed": "10110"},
            "tap_a": {"length": 7, "taps": [7, 6], "seed": "1100101"},
            "tap_b": {"length": 9, "taps": [9, 5], "seed": "100110111"},
        })
        reseeded = geffe.reseed(rng)
        assert isinstance(reseeded, GeffeGeneratorConfig)
        assert "1" in reseeded.tap_b.seed

    def test_digest_is_stable_and_hides_key(self):
        rc4 = Rc4GeneratorConfig(key_hex="4b6579")
        assert generator_digest(rc4) == generator_digest(Rc4GeneratorConfig(key_hex="4B6579"))
        assert "4b6579" not in generator_digest(rc4)

"""
Pytest Configuration and Shared Fixtures

Shared fixtures for the cipherlab test suite: the worked-example keys and
maps, the bundled corpus, scratch data directories and small attack
budgets that keep the default run fast.
"""

import json
import shutil
from pathlib import Path

import pytest

from cipherlab.config import HillClimbBudget, PACKAGE_DATA_DIR, get_config

REPO_ROOT = Path(__file__).parent.parent.parent


# ============================================================================
# FIXTURES: Settings
# ============================================================================


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch):
    """Every test sees default settings, untouched by the caller's environment."""
    for name in ("CIPHERLAB_CONFIG", "CIPHERLAB_DATA", "CIPHERLAB_SEED", "ENVIRONMENT", "LOG_LEVEL", "LOG_FORMAT"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(REPO_ROOT)
    get_config.cache_clear()
    yield
    get_config.cache_clear()


@pytest.fixture
def fast_budget() -> HillClimbBudget:
    return HillClimbBudget(restarts=2, stall_limit=400)


# ============================================================================
# FIXTURES: Worked examples
# ============================================================================


@pytest.fixture
def qwerty_key() -> str:
    return "QWERTYUIOPASDFGHJKLZXCVBNM"


@pytest.fixture
def joker_map_9() -> dict:
    return {"b": "a", "o": "c", "i": "r", "s": "z", "a": "q", "j": "g", "k": "e", "e": "x", "r": "t"}


@pytest.fixture
def joker_map_11(joker_map_9) -> dict:
    return {**joker_map_9, "u": "h", "n": "l"}


@pytest.fixture
def joker_lexicon() -> dict:
    return {"is": "es", "a": "un"}


# ============================================================================
# FIXTURES: Data
# ============================================================================


@pytest.fixture
def data_dir() -> Path:
    return PACKAGE_DATA_DIR


@pytest.fixture
def corpus_text(data_dir: Path) -> str:
    return (data_dir / "english_corpus.txt").read_text(encoding="utf-8")


@pytest.fixture
def english_sample(corpus_text: str) -> str:
    """About 2000 letters of running English text."""
    text, letters = [], 0
    for word in corpus_text.split():
        text.append(word)
        letters += sum(1 for c in word if c.isalpha())
        if letters >= 2000:
            break
    return " ".join(text)


@pytest.fixture
def scratch_data_dir(tmp_path: Path, data_dir: Path) -> Path:
    """A writable copy of the bundled data directory."""
    target = tmp_path / "data"
    shutil.copytree(data_dir, target)
    return target


@pytest.fixture
def wrong_key_pipeline(tmp_path: Path, data_dir: Path) -> Path:
    """The worked-example pipeline with the parallel key's first byte flipped."""
    document = json.loads((data_dir / "pipeline_spanglish.json").read_text(encoding="utf-8"))
    document["parallel_key"] = {"hex": "D370616E676C697368"}
    path = tmp_path / "pipeline_wrong_key.json"
    path.write_text(json.dumps(document), encoding="utf-8")
    return path


# ============================================================================
# UTILITIES
# ============================================================================


def arc4_oracle(key: bytes, n: int) -> bytes:
    """Independent RC4 keystream from the cryptography package."""
    try:
        from cryptography.hazmat.decrepit.ciphers.algorithms import ARC4
    except ImportError:
        from cryptography.hazmat.primitives.ciphers.algorithms import ARC4
    from cryptography.hazmat.primitives.ciphers import Cipher

    encryptor = Cipher(ARC4(key), mode=None).encryptor()
    return encryptor.update(bytes(n))


# ============================================================================
# MARKERS
# ============================================================================


def pytest_configure(config):
    """Register custom markers."""
    config.addinivalue_line(
        "markers", "slow: marks tests as slow (deselect with '-m \"not slow\"')"
    )
    config.addinivalue_line(
        "markers", "integration: marks tests that run several modules end to end"
    )
    config.addinivalue_line(
        "markers", "requires_oracle: marks tests that need the cryptography package"
    )


# ============================================================================
# TEST COLLECTION
# ============================================================================


def pytest_collection_modifyitems(config, items):
    """Skip oracle tests when cryptography is not installed."""
    import importlib.util

    skip_oracle = pytest.mark.skip(reason="cryptography not installed")
    have_oracle = importlib.util.find_spec("cryptography") is not None
    for item in items:
        if "requires_oracle" in item.keywords and not have_oracle:
            item.add_marker(skip_oracle)

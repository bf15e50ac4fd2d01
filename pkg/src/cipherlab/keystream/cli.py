"""
Keystream CLI

Prints n keystream digits from an RC4, LFSR or spec-file generator:
bytes as uppercase hex for RC4, bits as a 0/1 string for LFSR and Geffe.

Usage:
    cipherlab keystream --rc4 --key-hex 4b6579 --n 10
    cipherlab keystream --lfsr --length 5 --taps 5,3 --seed 10110 --n 31
    cipherlab keystream --spec geffe.yml --n 1000 --out stream.bin
"""

from pathlib import Path
from typing import Any, Dict, Optional

import click
import yaml

from cipherlab.config import LfsrGeneratorConfig, Rc4GeneratorConfig, load_generator
from cipherlab.errors import ConfigError, InvalidSpecError
from cipherlab.keystream.geffe import geffe_keystream
from cipherlab.keystream.lfsr import lfsr_keystream
from cipherlab.keystream.stream import KeyStream
from cipherlab.logger import get_logger

logger = get_logger(__name__)


def read_generator_file(path: Path) -> Dict[str, Any]:
    """A generator document from YAML or JSON; a top-level 'generator' key is unwrapped."""
    if not path.exists():
        raise ConfigError("Generator spec file not found", str(path))
    try:
        document = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"Generator spec is not valid YAML/JSON ({e})", str(path)) from e
    if not isinstance(document, dict):
        raise ConfigError("Generator spec must be a mapping", str(path))
    return document.get("generator", document)


def parse_taps(taps: str) -> list:
    try:
        return [int(t) for t in taps.replace(" ", "").split(",") if t]
    except ValueError as e:
        raise InvalidSpecError(f"Taps must be comma-separated integers, got {taps!r}") from e


def generate(generator: Any, n: int) -> KeyStream:
    """n digits: bytes for RC4, bits for the LFSR-based generators."""
    if isinstance(generator, Rc4GeneratorConfig):
        return generator.keystream(n)
    if isinstance(generator, LfsrGeneratorConfig):
        return lfsr_keystream(generator.build(), n)[0]
    return geffe_keystream(generator.build(), n)[0]


@click.command("keystream")
@click.option("--rc4", "kind", flag_value="rc4", help="RC4 generator (needs --key-hex)")
@click.option("--lfsr", "kind", flag_value="lfsr", help="LFSR generator (needs --length, --taps, --seed)")
@click.option("--spec", "spec_path", type=click.Path(path_type=Path), help="Generator spec file (YAML/JSON)")
@click.option("--key-hex", help="RC4 key as hex")
@click.option("--drop", type=int, default=0, show_default=True, help="RC4 bytes to discard first")
@click.option("--length", type=int, help="LFSR length L")
@click.option("--taps", help="LFSR taps, e.g. 5,3")
@click.option("--seed", "seed_bits", help="LFSR fill as bits, position 1 first")
@click.option("--n", "n", type=click.IntRange(min=0), required=True, help="Digits to emit (bytes for RC4, bits otherwise)")
@click.option("--out", type=click.Path(path_type=Path), help="Write raw bytes here instead of printing")
def keystream(
    kind: Optional[str],
    spec_path: Optional[Path],
    key_hex: Optional[str],
    drop: int,
    length: Optional[int],
    taps: Optional[str],
    seed_bits: Optional[str],
    n: int,
    out: Optional[Path],
):
    """Generate keystream from a generator spec."""
    if spec_path is not None:
        generator = load_generator(read_generator_file(spec_path))
    elif kind == "rc4":
        if not key_hex:
            raise InvalidSpecError("--rc4 needs --key-hex")
        generator = load_generator({"kind": "rc4", "key_hex": key_hex, "drop": drop})
    elif kind == "lfsr":
        if length is None or taps is None or seed_bits is None:
            raise InvalidSpecError("--lfsr needs --length, --taps and --seed")
        generator = load_generator({
            "kind": "lfsr", "length": length, "taps": parse_taps(taps), "seed": seed_bits,
        })
    else:
        raise InvalidSpecError("Choose a generator: --rc4, --lfsr or --spec FILE")

    stream = generate(generator, n)
    logger.debug("Keystream generated", kind=generator.kind, digits=len(stream))

    if out is not None:
        out.write_bytes(stream.to_bytes())
        return
    if n == 0:
        return
    if isinstance(generator, Rc4GeneratorConfig):
        click.echo(stream.to_hex())
    else:
        click.echo(stream.to_bitstring())

"""
Natural-language layer CLI: encrypt, decrypt and lexicon checks.

Ciphertext files are raw bytes; without --out, ciphertext is printed as
hex. Decrypt errors from the pipeline surface verbatim (exit 2 for a
config problem, 3 for a key or config mismatch).

Usage:
    cipherlab encrypt --pipeline pipeline_spanglish.json --text "bob is a joker" --out msg.bin
    cipherlab decrypt --pipeline pipeline_spanglish.json --in msg.bin
    cipherlab lexicon validate spanglish.json
"""

import sys
from pathlib import Path
from typing import Optional

import click
from rich.console import Console
from rich.table import Table

from cipherlab.config import data_path
from cipherlab.cryptanalysis import load_corpus
from cipherlab.errors import ConfigError
from cipherlab.logger import get_logger
from cipherlab.nl_layer.lexicon import Direction, lexicon_load_file, translate_mix
from cipherlab.nl_layer.pipeline import StageTrace, load_pipeline, nl_decrypt, nl_encrypt

console = Console(stderr=True)
logger = get_logger(__name__)

pipeline_option = click.option(
    "--pipeline", "pipeline_path", required=True, help="Pipeline config (JSON file or bundled name)"
)


def _read_text(in_path: Optional[Path], text: Optional[str]) -> str:
    if text is not None:
        return text
    data = in_path.read_bytes() if in_path is not None else sys.stdin.buffer.read()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ConfigError(f"Input is not valid UTF-8 text (offset {e.start})",
                          str(in_path) if in_path else None) from e


def _read_ciphertext(in_path: Optional[Path], hex_text: Optional[str]) -> bytes:
    if hex_text is not None:
        try:
            return bytes.fromhex(hex_text)
        except ValueError as e:
            raise ConfigError(f"--hex is not valid hex: {e}") from e
    if in_path is not None:
        return in_path.read_bytes()
    return sys.stdin.buffer.read()


@click.command("encrypt")
@pipeline_option
@click.option("--in", "in_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Plaintext file (UTF-8); stdin if omitted")
@click.option("--text", help="Plaintext given inline")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Ciphertext file (raw bytes)")
@click.option("--trace", "trace_path", type=click.Path(dir_okay=False, path_type=Path),
              help="Append per-stage JSON Lines here")
def encrypt(pipeline_path: str, in_path: Optional[Path], text: Optional[str],
            out: Optional[Path], trace_path: Optional[Path]):
    """Encrypt text through the natural-language pipeline."""
    cfg = load_pipeline(pipeline_path)
    plaintext = _read_text(in_path, text)
    trace = StageTrace("encrypt") if trace_path else None
    ciphertext = nl_encrypt(plaintext, cfg, trace=trace)
    if trace is not None:
        trace.write_jsonl(trace_path)
    logger.info("Encrypted", stages=[s.value for s in cfg.stages], size=len(ciphertext))
    if out is not None:
        out.write_bytes(ciphertext)
    else:
        click.echo(ciphertext.hex().upper())


@click.command("decrypt")
@pipeline_option
@click.option("--in", "in_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Ciphertext file (raw bytes); stdin if omitted")
@click.option("--hex", "hex_text", help="Ciphertext given inline as hex")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Plaintext file")
@click.option("--trace", "trace_path", type=click.Path(dir_okay=False, path_type=Path),
              help="Append per-stage JSON Lines here")
def decrypt(pipeline_path: str, in_path: Optional[Path], hex_text: Optional[str],
            out: Optional[Path], trace_path: Optional[Path]):
    """Decrypt ciphertext, undoing the pipeline stages in reverse."""
    cfg = load_pipeline(pipeline_path)
    ciphertext = _read_ciphertext(in_path, hex_text)
    trace = StageTrace("decrypt") if trace_path else None
    plaintext = nl_decrypt(ciphertext, cfg, trace=trace)
    if trace is not None:
        trace.write_jsonl(trace_path)
    if out is not None:
        out.write_bytes(plaintext.encode("utf-8"))
    else:
        click.echo(plaintext, nl=False)


@click.group("lexicon")
def lexicon():
    """Mix-lexicon tools."""


@lexicon.command("validate")
@click.argument("path", type=click.Path(path_type=Path))
@click.option("--corpus", "corpus_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Measure coverage on this text instead of the bundled corpus")
def validate(path: Path, corpus_path: Optional[Path]):
    """Check a lexicon is well formed and injective; report corpus coverage."""
    if not path.exists():
        bundled = data_path(str(path))
        path = bundled if bundled.exists() else path
    lex = lexicon_load_file(path)
    corpus = corpus_path.read_text(encoding="utf-8") if corpus_path else load_corpus()
    _, oov = translate_mix(corpus, lex, Direction.FORWARD)

    table = Table(title=f"Lexicon {path.name}")
    table.add_column("Field", style="cyan")
    table.add_column("Value")
    table.add_row("Languages", f"{lex.source} -> {lex.mix}")
    table.add_row("Entries", str(len(lex)))
    table.add_row("Corpus tokens", str(oov.total_tokens))
    table.add_row("Coverage", f"{oov.coverage:.1%}")
    console.print(table)
    console.print("[green]Lexicon is valid[/green]")

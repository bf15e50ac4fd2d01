"""
Attack CLI

One subcommand per attack; each prints an AttackReport as JSON (or writes
it with --out). A failed attack still exits 0: the outcome is the
"status" field, not the exit code.

Usage:
    cipherlab attack freq
    cipherlab attack break-mono --in cipher.txt --seed 7
    cipherlab attack reuse --c1 a.bin --c2 b.bin --crib " the "
    cipherlab attack correlation --demo
    cipherlab attack bm --bits 0101010101
    cipherlab attack replay --trace frames.jsonl
"""

import re
import time
from pathlib import Path
from typing import Optional

import click
import yaml

from cipherlab.channel.session import read_frames
from cipherlab.config import HillClimbBudget, data_path, get_config, load_generator
from cipherlab.cryptanalysis.berlekamp_massey import berlekamp_massey_report
from cipherlab.cryptanalysis.correlation import correlation_attack_geffe
from cipherlab.cryptanalysis.monoalpha import break_monoalphabetic
from cipherlab.cryptanalysis.reference import english_reference, load_corpus
from cipherlab.cryptanalysis.replay import replay_report
from cipherlab.cryptanalysis.report import AttackReport
from cipherlab.cryptanalysis.reuse import keystream_reuse_attack
from cipherlab.cryptanalysis.stats import chi_squared_text, index_of_coincidence, letter_frequency
from cipherlab.errors import ConfigError, InvalidSpecError
from cipherlab.keystream import LfsrSpec, geffe_keystream
from cipherlab.keystream.cli import parse_taps
from cipherlab.logger import get_logger

logger = get_logger(__name__)

DEMO_FIXTURE = "geffe_demo.yml"
_LFSR_SPEC_RE = re.compile(r"^\s*(\d+)\s*:\s*([\d,\s]+)$")

out_option = click.option(
    "--out", type=click.Path(dir_okay=False, path_type=Path), help="Write the JSON report here"
)


def emit_report(report: AttackReport, out: Optional[Path]) -> None:
    if out is not None:
        out.write_text(report.to_json() + "\n", encoding="utf-8")
    else:
        click.echo(report.to_json())


def read_text_input(in_path: Optional[Path], text: Optional[str]) -> Optional[str]:
    if text is not None:
        return text
    if in_path is not None:
        return in_path.read_text(encoding="utf-8")
    return None


def read_bits(in_path: Optional[Path], bits: Optional[str]) -> str:
    """A 0/1 string from --bits or a file; whitespace is ignored."""
    raw = bits if bits is not None else (in_path.read_text(encoding="utf-8") if in_path else "")
    cleaned = "".join(raw.split())
    if any(c not in "01" for c in cleaned):
        raise InvalidSpecError("Bit input may contain only 0 and 1")
    return cleaned


def read_ciphertext(path: Optional[Path], hex_text: Optional[str], label: str) -> bytes:
    if hex_text is not None:
        try:
            return bytes.fromhex(hex_text)
        except ValueError as e:
            raise ConfigError(f"--{label}-hex is not valid hex: {e}") from e
    if path is not None:
        return path.read_bytes()
    raise ConfigError(f"Give --{label} FILE or --{label}-hex HEX")


def parse_lfsr_spec(text: str) -> LfsrSpec:
    """'L:t1,t2,...' as an LfsrSpec, e.g. '5:5,3'."""
    match = _LFSR_SPEC_RE.match(text)
    if match is None:
        raise InvalidSpecError(f"LFSR spec must look like L:t1,t2 - got {text!r}")
    return LfsrSpec(int(match.group(1)), frozenset(parse_taps(match.group(2))))


@click.group("attack")
def attack():
    """Run one cryptanalytic attack and print its report."""


@attack.command("freq")
@click.option("--in", "in_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Text to analyse; the bundled English corpus if omitted")
@click.option("--text", help="Text given inline")
@out_option
def freq(in_path: Optional[Path], text: Optional[str], out: Optional[Path]):
    """Letter frequencies, index of coincidence and chi-squared against English."""
    started = time.perf_counter()
    source = read_text_input(in_path, text)
    if source is None:
        source = load_corpus()
    profile = letter_frequency(source)
    ioc = index_of_coincidence(source)
    chi2 = chi_squared_text(source, english_reference())
    report = AttackReport(
        method="freq",
        summary={"top": profile.top(), "ioc": round(ioc, 6), "chi_squared": round(chi2, 4)},
        scores={"ioc": ioc, "chi_squared": chi2},
        details={
            "ranked": profile.ranked(),
            "frequencies": {k: round(v, 6) for k, v in profile.to_dict().items()},
        },
        wall_time=time.perf_counter() - started,
    )
    emit_report(report, out)


@attack.command("break-mono")
@click.option("--in", "in_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Substitution ciphertext")
@click.option("--text", help="Ciphertext given inline")
@click.option("--truth", "truth_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Known plaintext, for an accuracy score")
@click.option("--seed", type=int, help="RNG seed for the hill climb")
@click.option("--restarts", type=click.IntRange(min=1), help="Hill-climb restarts")
@click.option("--stall-limit", type=click.IntRange(min=1), help="Non-improving swaps before restart")
@out_option
def break_mono(in_path, text, truth_path, seed, restarts, stall_limit, out):
    """Break a monoalphabetic substitution by frequency alignment and hill climbing."""
    ciphertext = read_text_input(in_path, text)
    if ciphertext is None:
        raise ConfigError("Give --in FILE or --text")
    base = get_config().attack.budget
    budget = HillClimbBudget(
        restarts=restarts or base.restarts,
        stall_limit=stall_limit or base.stall_limit,
    )
    truth = truth_path.read_text(encoding="utf-8") if truth_path else None
    emit_report(break_monoalphabetic(ciphertext, budget=budget, rng_seed=seed, truth=truth), out)


@attack.command("reuse")
@click.option("--c1", "c1_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--c1-hex")
@click.option("--c2", "c2_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--c2-hex")
@click.option("--crib", help="Guessed plaintext fragment (default from settings)")
@click.option("--threshold", type=click.FloatRange(0.0, 1.0), help="Printable fraction to accept")
@out_option
def reuse(c1_path, c1_hex, c2_path, c2_hex, crib, threshold, out):
    """Crib-drag two ciphertexts encrypted under the same keystream."""
    c1 = read_ciphertext(c1_path, c1_hex, "c1")
    c2 = read_ciphertext(c2_path, c2_hex, "c2")
    crib = crib or get_config().attack.default_crib
    emit_report(keystream_reuse_attack(c1, c2, crib, printable_threshold=threshold), out)


@attack.command("correlation")
@click.option("--demo", is_flag=True, help="Attack the bundled Geffe fixture and check its seeds")
@click.option("--in", "in_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Keystream bits as 0/1 text")
@click.option("--bits", help="Keystream bits given inline")
@click.option("--selector", help="Selector LFSR as L:taps, e.g. 5:5,3")
@click.option("--tap-a", help="First tap LFSR as L:taps")
@click.option("--tap-b", help="Second tap LFSR as L:taps")
@click.option("--threshold", type=click.FloatRange(0.5, 1.0, min_open=True, max_open=True),
              help="Minimum agreement for a tap seed")
@out_option
def correlation(demo, in_path, bits, selector, tap_a, tap_b, threshold, out):
    """Divide-and-conquer seed recovery for a Geffe generator."""
    if demo:
        report = run_correlation_demo(threshold)
    else:
        if not (selector and tap_a and tap_b):
            raise InvalidSpecError("Give --selector, --tap-a and --tap-b, or use --demo")
        stream = read_bits(in_path, bits)
        report = correlation_attack_geffe(
            stream, parse_lfsr_spec(tap_a), parse_lfsr_spec(tap_b), parse_lfsr_spec(selector),
            threshold=threshold,
        )
    emit_report(report, out)


def run_correlation_demo(threshold: Optional[float] = None) -> AttackReport:
    """Synthesize the fixture's keystream, attack it, and record whether every seed matches."""
    path = data_path(DEMO_FIXTURE)
    if not path.exists():
        raise ConfigError("Geffe demo fixture not found", str(path))
    document = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    generator = load_generator(document.get("generator", {}))
    n_bits = int(document.get("bits", 1000))
    spec = generator.build()
    stream, _ = geffe_keystream(spec, n_bits)

    report = correlation_attack_geffe(
        stream, spec.tap_a.spec, spec.tap_b.spec, spec.selector.spec,
        combiner=spec.combiner, threshold=threshold,
    )
    expected = {
        "selector": generator.selector.seed,
        "tap_a": generator.tap_a.seed,
        "tap_b": generator.tap_b.seed,
    }
    recovered = {
        name: (entry or {}).get("bits") for name, entry in report.details["seeds"].items()
    }
    report.details["ground_truth"] = expected
    report.details["matches_ground_truth"] = recovered == expected
    logger.info("Correlation demo", matches=recovered == expected)
    return report


@attack.command("bm")
@click.option("--bits", help="Bit sequence, e.g. 0101010101")
@click.option("--in", "in_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Bits as 0/1 text")
@out_option
def bm(bits, in_path, out):
    """Linear complexity and shortest LFSR of a bit sequence (Berlekamp-Massey)."""
    emit_report(berlekamp_massey_report(read_bits(in_path, bits)), out)


@attack.command("replay")
@click.option("--trace", "trace_path", required=True, type=click.Path(dir_okay=False, path_type=Path),
              help="Trace file (JSON Lines) from `cipherlab simulate`")
@out_option
def replay(trace_path: Path, out: Optional[Path]):
    """Flag frames whose payload or sequence number was seen before."""
    frames = read_frames(trace_path)
    emit_report(replay_report([(f.seq, f.digest()) for f in frames]), out)

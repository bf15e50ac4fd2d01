"""
Channel CLI: simulate a link and evaluate the natural-language layer.

Usage:
    cipherlab simulate --profile weak-wep --seed 7 --count 100 --iv-space 16 --out trace.jsonl
    cipherlab simulate --profile reused --seed 7 --replays 3 --attack
    cipherlab evaluate --lexicon spanglish.json --trials 10 --seed 7
"""

import json
import random
from pathlib import Path
from typing import List, Optional

import click
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from cipherlab.channel.eavesdrop import AttackKind, TrialResult, eavesdrop_and_attack
from cipherlab.channel.evaluate import ComparisonReport, evaluate_nl_layer
from cipherlab.channel.profiles import get_profile
from cipherlab.channel.session import inject_replays, run_session
from cipherlab.cipher import charmap_load
from cipherlab.config import data_path, get_config
from cipherlab.cryptanalysis import corpus_sentences, split_sentences
from cipherlab.errors import ConfigError
from cipherlab.logger import get_logger
from cipherlab.nl_layer import lexicon_load_file

console = Console(stderr=True)
stdout_console = Console()
logger = get_logger(__name__)


def resolve_input(name: str) -> Path:
    """A path as given, else the bundled data file of that name."""
    path = Path(name)
    if path.exists():
        return path
    bundled = data_path(name)
    if bundled.exists():
        return bundled
    raise ConfigError("File not found", name)


def pick_messages(messages_path: Optional[Path], count: int, seed: int) -> List[str]:
    """Lines of --messages, or `count` corpus sentences drawn with the session seed."""
    if messages_path is not None:
        lines = [line for line in messages_path.read_text(encoding="utf-8").splitlines() if line.strip()]
        if not lines:
            raise ConfigError("Messages file has no messages", str(messages_path))
        return lines
    sentences = corpus_sentences()
    rng = random.Random(f"messages:{seed}")
    if count <= len(sentences):
        return rng.sample(sentences, count)
    return [rng.choice(sentences) for _ in range(count)]


def render_attack_table(results: List[TrialResult]) -> Table:
    table = Table(title="Eavesdropper results")
    table.add_column("Attack", style="cyan")
    table.add_column("Frames", justify="right")
    table.add_column("Accuracy", justify="right")
    table.add_column("Dict hits", justify="right")
    table.add_column("Time (s)", justify="right")
    table.add_column("Note")
    for r in results:
        note = r.reason or ""
        if r.attack == AttackKind.REPLAY.value and r.details.get("flagged"):
            note = f"flagged {r.details['flagged']}"
        table.add_row(
            r.attack, str(r.frames_observed), f"{r.accuracy:.3f}",
            f"{r.dictionary_hit_rate:.3f}", f"{r.wall_time:.3f}", note,
        )
    return table


@click.command("simulate")
@click.option("--profile", "profile_name", default="fresh", show_default=True, help="Channel profile name")
@click.option("--profiles", "profiles_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Profiles YAML (bundled profiles.yml if omitted)")
@click.option("--seed", type=int, help="Session seed (settings default_seed if omitted)")
@click.option("--messages", "messages_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="One message per line; corpus sentences if omitted")
@click.option("--count", type=click.IntRange(min=1), default=20, show_default=True,
              help="Corpus sentences to send when --messages is omitted")
@click.option("--iv-space", type=click.IntRange(min=1), help="Override the weak-wep IV space")
@click.option("--corruption", type=click.FloatRange(0.0, 1.0), help="Override the per-byte corruption rate")
@click.option("--replays", type=click.IntRange(min=0), default=0, show_default=True,
              help="Frames the replay attacker re-sends")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Trace file (JSON Lines)")
@click.option("--receiver-log", type=click.Path(dir_okay=False, path_type=Path), help="Receiver log (JSON)")
@click.option("--attack", "run_attacks", is_flag=True, help="Run the eavesdropper's attack suite on the trace")
@click.option("--report", "report_path", type=click.Path(dir_okay=False, path_type=Path),
              help="Write attack results as JSON here")
def simulate(profile_name, profiles_path, seed, messages_path, count, iv_space, corruption,
             replays, out, receiver_log, run_attacks, report_path):
    """Send messages over a simulated channel and capture the trace."""
    seed = get_config().default_seed if seed is None else seed
    profile = get_profile(profile_name, profiles_path).with_overrides(iv_space=iv_space, corruption=corruption)
    messages = pick_messages(messages_path, count, seed)

    trace = run_session(profile, messages, seed)
    injected: List[int] = []
    if replays:
        trace, injected = inject_replays(trace, replays, seed)

    if out is not None:
        trace.write_jsonl(out)
    else:
        for frame in trace.frames:
            click.echo(json.dumps(frame.to_dict()))
    if receiver_log is not None:
        trace.write_receiver_log(receiver_log)

    delivered = sum(1 for e in trace.received if e.ok)
    console.print(Panel.fit(
        f"[bold cyan]Profile[/bold cyan] {profile.name}  [dim]{profile.description}[/dim]\n"
        f"frames {len(trace.frames)}  delivered {delivered}/{len(trace.received)}  "
        f"key reuses {trace.key_reuses}  corrupted bytes {trace.corrupted_bytes}  "
        f"injected replays {injected}",
        border_style="cyan",
    ))

    if run_attacks:
        results = eavesdrop_and_attack(trace, rng_seed=seed)
        console.print(render_attack_table(results))
        if report_path is not None:
            report_path.write_text(json.dumps([r.to_dict() for r in results], indent=2), encoding="utf-8")


def render_comparison(report: ComparisonReport) -> Table:
    table = Table(title=f"NL-layer evaluation ({report.trials} trials, seed {report.seed})")
    table.add_column("Arm", style="cyan")
    table.add_column("Median accuracy", justify="right")
    table.add_column("Median dict hits", justify="right")
    table.add_row("plain", f"{report.plain.median_accuracy:.3f}", f"{report.plain.median_hit_rate:.3f}")
    table.add_row("mixed", f"{report.mixed.median_accuracy:.3f}", f"{report.mixed.median_hit_rate:.3f}")
    diff = report.difference
    table.add_row("plain - mixed", f"{diff['accuracy']:+.3f}", f"{diff['dictionary_hit_rate']:+.3f}",
                  style="bold")
    return table


@click.command("evaluate")
@click.option("--lexicon", "lexicon_name", help="Mix lexicon (path or bundled name); none = identity mix")
@click.option("--charmap", "charmap_name", help="Character map (path or bundled name)")
@click.option("--corpus", "corpus_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="English text to sample from; the bundled corpus if omitted")
@click.option("--trials", type=click.IntRange(min=1), help="Trial count (at least 10)")
@click.option("--seed", type=int, help="Harness seed (settings default_seed if omitted)")
@click.option("--n-jobs", type=int, help="joblib workers for the trials")
@click.option("--format", "fmt", type=click.Choice(["table", "json"], case_sensitive=False),
              default="table", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Write the JSON report here")
def evaluate(lexicon_name, charmap_name, corpus_path, trials, seed, n_jobs, fmt, out):
    """Compare substitution breaking on plain and language-mixed text."""
    settings = get_config().evaluation
    if n_jobs is not None:
        settings = settings.model_copy(update={"n_jobs": n_jobs})
    lexicon = lexicon_load_file(resolve_input(lexicon_name)) if lexicon_name else None
    charmap = None
    if charmap_name:
        charmap = charmap_load(resolve_input(charmap_name).read_text(encoding="utf-8"))
    corpus = split_sentences(corpus_path.read_text(encoding="utf-8")) if corpus_path else corpus_sentences()

    report = evaluate_nl_layer(
        corpus, lexicon, charmap,
        trials=trials, rng_seed=seed, settings=settings,
        lexicon_ref=lexicon_name, charmap_ref=charmap_name,
    )
    if out is not None:
        out.write_text(report.to_json() + "\n", encoding="utf-8")
    if fmt == "json":
        click.echo(report.to_json())
        return
    stdout_console.print(render_comparison(report))
    console.print(f"[dim]lexicon coverage {report.coverage:.1%}; reproduce with:[/dim] {report.reproduce}")

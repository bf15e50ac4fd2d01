"""
CipherLab CLI

Root command group. Each subpackage owns its commands; this module wires
them together, applies the global options and turns CipherLabError into
an exit code (2 for configuration problems, 3 for key/config mismatch).

Usage:
    cipherlab keystream --rc4 --key-hex 4b6579 --n 10
    cipherlab encrypt --pipeline pipeline_spanglish.json --text "bob is a joker"
    cipherlab attack bm --bits 0101010101
    cipherlab simulate --profile weak-wep --seed 7
    cipherlab evaluate --lexicon spanglish.json --trials 10 --seed 7
    cipherlab demo
    cipherlab config show
"""

import json
import os
import sys
from pathlib import Path
from typing import Optional

import click
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from cipherlab import __version__
from cipherlab.channel.cli import evaluate, simulate
from cipherlab.config import build_config, get_config, validate_config
from cipherlab.cryptanalysis.cli import attack
from cipherlab.demo import run_conformance
from cipherlab.errors import CipherLabError
from cipherlab.keystream.cli import keystream
from cipherlab.logger import get_logger, set_log_level
from cipherlab.nl_layer.cli import decrypt, encrypt, lexicon

console = Console()
logger = get_logger(__name__)


class CipherLabGroup(click.Group):
    """Maps library errors to their exit codes with a one-line message."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except CipherLabError as e:
            logger.debug("Command failed", error_type=type(e).__name__)
            click.secho(f"Error: {e}", fg="red", err=True)
            ctx.exit(e.exit_code)


@click.group(cls=CipherLabGroup)
@click.version_option(__version__, prog_name="cipherlab")
@click.option("--verbose", "-v", is_flag=True, help="Debug logging")
@click.option("--config", "config_path", type=click.Path(dir_okay=False, path_type=Path),
              help="Settings YAML (default config/cipherlab.yml or $CIPHERLAB_CONFIG)")
def main(verbose: bool, config_path: Optional[Path]):
    """Stream-cipher laboratory: generators, ciphers, the language layer and their attacks."""
    if config_path is not None:
        build_config(config_path)
        os.environ["CIPHERLAB_CONFIG"] = str(config_path)
        get_config.cache_clear()
    if verbose:
        set_log_level("DEBUG")


@main.command("demo")
@click.option("--format", "fmt", type=click.Choice(["table", "json"], case_sensitive=False), default="table")
def demo(fmt: str):
    """Recompute every worked example and diff it against the expected string."""
    checks = run_conformance()
    failed = [c for c in checks if not c.passed]

    if fmt == "json":
        click.echo(json.dumps([c.to_dict() for c in checks], indent=2))
        sys.exit(1 if failed else 0)

    console.print(Panel.fit(
        "[bold cyan]CipherLab Conformance Demo[/bold cyan]\n"
        "[dim]Worked examples, recomputed end to end[/dim]",
        border_style="cyan",
    ))
    table = Table()
    table.add_column("Check", style="cyan")
    table.add_column("Expected")
    table.add_column("Actual")
    table.add_column("", justify="center")
    for c in checks:
        table.add_row(c.name, c.expected, c.actual, "[green]✓[/green]" if c.passed else "[red]✗[/red]")
    console.print(table)

    if failed:
        console.print(f"\n[red]❌ {len(failed)} of {len(checks)} checks differ[/red]\n")
        sys.exit(1)
    console.print(f"\n[green]✅ All {len(checks)} checks match[/green]\n")


@main.group("config")
def config_group():
    """Inspect settings."""


@config_group.command("show")
@click.option("--format", "fmt", type=click.Choice(["table", "json"], case_sensitive=False), default="table")
def config_show(fmt: str):
    """Print the effective settings and any configuration issues."""
    config = get_config()
    issues = validate_config(config)
    data = config.model_dump(mode="json")

    if fmt == "json":
        click.echo(json.dumps({"settings": data, "issues": issues}, indent=2))
        return

    table = Table(title="Effective settings")
    table.add_column("Setting", style="cyan")
    table.add_column("Value")
    for key, value in data.items():
        table.add_row(key, json.dumps(value) if isinstance(value, (dict, list)) else str(value))
    console.print(table)
    if issues:
        console.print("\n[yellow]Issues:[/yellow]")
        for issue in issues:
            console.print(f"  • {issue}")
    else:
        console.print("\n[green]✅ Configuration is valid[/green]")


main.add_command(keystream)
main.add_command(encrypt)
main.add_command(decrypt)
main.add_command(lexicon)
main.add_command(attack)
main.add_command(simulate)
main.add_command(evaluate)


if __name__ == "__main__":
    main()

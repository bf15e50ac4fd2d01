#!/usr/bin/env python3
"""
Rebuild the English reference snapshots from the bundled corpus.

Writes english_profile.json (add-one letter frequencies) and
quadgrams.json (quadgram counts) next to english_corpus.txt. Both ship
with the package; rerun after editing the corpus so they stay in step.

Usage:
    python scripts/build_reference_data.py
    python scripts/build_reference_data.py --data-dir /path/to/data
"""

import sys
from pathlib import Path
from typing import Optional

import click
from rich.console import Console

from cipherlab.cryptanalysis import english_reference, index_of_coincidence, load_corpus, write_snapshots
from cipherlab.errors import CipherLabError

console = Console()


@click.command()
@click.option("--data-dir", type=click.Path(exists=True, file_okay=False, path_type=Path),
              help="Data directory holding english_corpus.txt (package data if omitted)")
def main(data_dir: Optional[Path]):
    """Write the frequency profile and quadgram snapshots."""
    try:
        paths = write_snapshots(data_dir)
        corpus = load_corpus(data_dir)
    except CipherLabError as e:
        console.print(f"[red]❌ {e}[/red]")
        sys.exit(e.exit_code)

    console.print("[green]✅ Reference snapshots written[/green]")
    for name, path in paths.items():
        console.print(f"  {name:<10} {path}")
    console.print(
        f"  top letter {english_reference(data_dir).top()}, "
        f"IoC {index_of_coincidence(corpus):.4f}"
    )


if __name__ == '__main__':
    main()

from pathlib import Path

import click
from flask import Blueprint

from src.utils.command_middleware import common_options, pipeline_command

scan_bp = Blueprint("scan_bp", __name__, cli_group=None)


@scan_bp.cli.command("scan")
@click.argument("file", required=False, type=click.Path(dir_okay=False))
@common_options
@pipeline_command("scan")
def scan(pipeline, file):
    """Escansion verso a verso (hexametro y pentametro alternados)."""
    if file is not None:
        lines = pipeline.corpus_service.repository.read_lines(file)
        rows = pipeline.scan_text(lines, Path(file).stem)
    else:
        rows = pipeline.scan()

    unscannable = sum(1 for row in rows if row[-1])
    click.echo(f"{len(rows)} versos, {unscannable} sin escandir")

import click
from flask import Blueprint

from src.utils.command_middleware import common_options, pipeline_command

transcribe_bp = Blueprint("transcribe_bp", __name__, cli_group=None)


@transcribe_bp.cli.command("transcribe")
@click.argument("file", required=False, type=click.Path(dir_okay=False))
@click.option("--text", help="Verso suelto a transcribir.")
@common_options
@pipeline_command("transcribe")
def transcribe(pipeline, file, text):
    """Transcripcion fonetica de un verso o de un archivo de versos."""
    if (file is None) == (text is None):
        raise click.UsageError("Indique un archivo o --text, no ambos")

    lines = [text] if text is not None else pipeline.corpus_service.repository.read_lines(file)
    for transcription in pipeline.transcribe(lines):
        click.echo(transcription)

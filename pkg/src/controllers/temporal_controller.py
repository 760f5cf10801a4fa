import click
from flask import Blueprint

from src.utils.command_middleware import common_options, pipeline_command

temporal_bp = Blueprint("temporal_bp", __name__, cli_group=None)


@temporal_bp.cli.command("temporal")
@click.option("--early", default="Amores", show_default=True, help="Obra de referencia temprana.")
@click.option("--late", default="Ex Ponto", show_default=True, help="Obra de referencia tardia.")
@click.option("--target", default="Heroides", show_default=True, help="Obra a situar.")
@common_options
@pipeline_command("temporal")
def temporal(pipeline, early, late, target):
    """Posicion temprana/tardia de cada carta."""
    scores = pipeline.temporal_view(early, late, target)
    click.echo(f"{len(scores)} poemas de {target} puntuados")

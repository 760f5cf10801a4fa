import click
from flask import Blueprint
from flask import current_app as app

from src.utils.command_middleware import common_options, pipeline_command

outliers_bp = Blueprint("outliers_bp", __name__, cli_group=None)


@outliers_bp.cli.command("outliers")
@click.option("--reference", default="Ovid", show_default=True,
              help="Autor u obras de referencia, separados por comas.")
@click.option("--confidence", type=click.FloatRange(0, 1, min_open=True, max_open=True))
@click.option("--top-k", type=click.IntRange(min=1), default=5, show_default=True)
@common_options
@pipeline_command("outliers")
def outliers(pipeline, reference, confidence, top_k):
    """Prueba de Mahalanobis contra el estilo de referencia."""
    params = pipeline.config.params
    params["reference"] = names = [name.strip() for name in reference.split(",") if name.strip()]
    params["confidence"] = confidence = confidence or app.config["CONFIDENCE"]

    report = pipeline.outliers(names, confidence, top_k)
    click.echo(f"Aceptados fuera de la referencia: {len(report.accepted_outside_reference)}; "
               f"rechazados dentro: {len(report.rejected_inside_reference)}")

import click
from flask import Blueprint
from flask import current_app as app

from src.utils.command_middleware import common_options, pipeline_command

features_bp = Blueprint("features_bp", __name__, cli_group=None)


@features_bp.cli.command("features")
@click.option("--poetic", is_flag=True, help="Matriz de 43 rasgos poeticos.")
@click.option("--lsa", is_flag=True, help="Matriz LSA de n-gramas.")
@click.option("--dims", type=click.IntRange(min=1), help="Dimensiones LSA.")
@common_options
@pipeline_command("features")
def features(pipeline, poetic, lsa, dims):
    """Tablas de rasgos por poema; sin banderas se emiten ambas."""
    params = pipeline.config.params
    params["dims"] = dims or app.config["LSA_DIMS"]
    params["ngram_sizes"] = app.config["NGRAM_SIZES"]
    params["min_df"] = app.config["NGRAM_MIN_DF"]
    if not poetic and not lsa:
        poetic = lsa = True

    pipeline.features(poetic=poetic, lsa=lsa)
    click.echo(f"Rasgos de {len(pipeline.corpus)} poemas en {pipeline.config.output_dir}")

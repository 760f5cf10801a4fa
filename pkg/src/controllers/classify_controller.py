import click
from flask import Blueprint
from flask import current_app as app

from src.models.learn import MODELS
from src.utils.command_middleware import common_options, pipeline_command

classify_bp = Blueprint("classify_bp", __name__, cli_group=None)


def parse_thresholds(ctx, param, value):
    if value is None:
        return None
    try:
        return tuple(int(part) for part in value.split(",") if part.strip())
    except ValueError:
        raise click.BadParameter("se esperaba una lista de enteros separados por comas")


@classify_bp.cli.command("classify")
@click.option("--features", "kind", type=click.Choice(["lsa", "poetic"]), default="lsa", show_default=True)
@click.option("--label", type=click.Choice(["author", "work"]), default="work", show_default=True)
@click.option("--model", "models", type=click.Choice(MODELS), multiple=True, help="Repetible; por defecto los cuatro.")
@click.option("--trials", type=click.IntRange(min=1), help="Particiones 80/20 repetidas.")
@click.option("--test-fraction", type=click.FloatRange(0, 1, min_open=True, max_open=True), default=0.2,
              show_default=True)
@click.option("--thresholds", callback=parse_thresholds, help="Longitudes minimas, p. ej. 0,20,40.")
@click.option("--exclude-work", "exclude", multiple=True, help="Obra a retirar en la ablacion.")
@click.option("--dims", type=click.IntRange(min=1), help="Dimensiones LSA.")
@common_options
@pipeline_command("classify")
def classify(pipeline, kind, label, models, trials, test_fraction, thresholds, exclude, dims):
    """Validacion supervisada: exactitud, F1 macro y matrices de confusion."""
    params = pipeline.config.params
    params["models"] = models = list(models or MODELS)
    params["trials"] = trials = trials or app.config["TRIALS"]
    params["dims"] = dims or app.config["LSA_DIMS"]
    params["min_df"] = app.config["NGRAM_MIN_DF"]

    results = pipeline.classify(kind, label, models, trials, test_fraction, thresholds or (), exclude)
    for result in results:
        click.echo(f"{result.model}: exactitud {result.accuracy:.3f}, F1 macro {result.macro_f1:.3f}")

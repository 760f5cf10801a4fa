import click
from flask import Blueprint
from flask import current_app as app

from src.controllers.classify_controller import parse_thresholds
from src.utils.command_middleware import common_options, pipeline_command

report_bp = Blueprint("report_bp", __name__, cli_group=None)


@report_bp.cli.command("report")
@click.option("--trials", type=click.IntRange(min=1))
@click.option("--thresholds", callback=parse_thresholds, help="Longitudes minimas, p. ej. 0,20,40.")
@click.option("--dims", type=click.IntRange(min=1))
@click.option("--subsets", type=click.IntRange(min=1))
@click.option("--subset-size", type=click.IntRange(min=1))
@click.option("--reference", default="Ovid", show_default=True)
@click.option("--confidence", type=click.FloatRange(0, 1, min_open=True, max_open=True))
@common_options
@pipeline_command("report")
def report(pipeline, trials, thresholds, dims, subsets, subset_size, reference, confidence):
    """Todo el estudio de punta a punta."""
    config = app.config
    pipeline.config.params.update(
        trials=trials or config["TRIALS"],
        thresholds=thresholds if thresholds is not None else config["THRESHOLDS"],
        dims=dims or config["LSA_DIMS"],
        min_df=config["NGRAM_MIN_DF"],
        subsets=subsets or config["BCT_SUBSETS"],
        subset_size=subset_size or config["BCT_SUBSET_SIZE"],
        reference=[name.strip() for name in reference.split(",") if name.strip()],
        confidence=confidence or config["CONFIDENCE"],
    )
    pipeline.report()
    click.echo(f"Informe completo en {pipeline.config.output_dir}")

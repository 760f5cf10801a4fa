import click
from flask import Blueprint
from flask import current_app as app

from src.utils.command_middleware import common_options, pipeline_command

cluster_bp = Blueprint("cluster_bp", __name__, cli_group=None)


@cluster_bp.cli.command("cluster")
@click.option("--method", type=click.Choice(["bct", "tsne"]), default="bct", show_default=True)
@click.option("--features", "kind", type=click.Choice(["lsa", "poetic"]), default="poetic", show_default=True)
@click.option("--perplexity", type=click.FloatRange(min=0, min_open=True))
@click.option("--subsets", type=click.IntRange(min=1))
@click.option("--subset-size", type=click.IntRange(min=1))
@click.option("-k", "neighbours", type=click.IntRange(min=1))
@click.option("--threshold", type=click.FloatRange(0, 1))
@click.option("--dims", type=click.IntRange(min=1), help="Dimensiones LSA.")
@common_options
@pipeline_command("cluster")
def cluster(pipeline, method, kind, perplexity, subsets, subset_size, neighbours, threshold, dims):
    """Grafo de consenso (BCT) o proyeccion t-SNE."""
    config = app.config
    params = pipeline.config.params
    if perplexity is None:
        perplexity = config["PERPLEXITY_LSA"] if kind == "lsa" else config["PERPLEXITY_POETIC"]
    params.update(
        perplexity=perplexity,
        subsets=subsets or config["BCT_SUBSETS"],
        subset_size=subset_size or config["BCT_SUBSET_SIZE"],
        neighbours=neighbours or config["BCT_NEIGHBOURS"],
        threshold=config["BCT_THRESHOLD"] if threshold is None else threshold,
        dims=dims or config["LSA_DIMS"],
        min_df=config["NGRAM_MIN_DF"],
    )

    layout = pipeline.cluster_view(method, kind, params["perplexity"], params["subsets"], params["subset_size"],
                                   params["neighbours"], params["threshold"])
    message = f"{method} sobre {len(layout.coordinates)} poemas"
    if layout.kl_divergence is not None:
        message += f", KL {layout.kl_divergence:.4f}"
    click.echo(message)

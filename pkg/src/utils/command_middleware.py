from functools import wraps

import click
from flask import current_app as app

from src.models.run_config import RunConfig
from src.repositories.artifact_repository import ArtifactError, ArtifactRepository
from src.repositories.corpus_repository import CorpusError
from src.repositories.lexicon_repository import LexiconError
from src.services.cluster_service import ClusterServiceError
from src.services.corpus_service import CorpusServiceError
from src.services.learn_service import LearnServiceError, LearnValueError
from src.services.lexsem_service import LexsemServiceError
from src.services.outlier_service import OutlierServiceError
from src.services.phonology_service import PhonologyError
from src.services.pipeline_service import PipelineService, PipelineServiceError
from src.services.poetics_service import PoeticsServiceError
from src.services.scansion_service import ScansionError
from src.services.temporal_service import TemporalServiceError
from src.utils.error_handlers import DataError
from src.workspace import Workspace, WorkspaceError

DATA_ERRORS = (
    ArtifactError, ClusterServiceError, CorpusError, CorpusServiceError, LearnServiceError, LearnValueError,
    LexiconError, LexsemServiceError, OutlierServiceError, PhonologyError, PipelineServiceError,
    PoeticsServiceError, ScansionError, TemporalServiceError, WorkspaceError,
)
COMMON_OPTIONS = ("corpus", "output", "seed", "lexicon", "rhyme_weights", "min_lines")


def common_options(f):
    """Opciones compartidas por todos los comandos del estudio."""
    options = (
        click.option("--corpus", type=click.Path(dir_okay=False), help="Manifiesto TSV del corpus."),
        click.option("--output", type=click.Path(file_okay=False), help="Directorio de salida."),
        click.option("--seed", type=int, help="Semilla de todos los pasos aleatorios."),
        click.option("--lexicon", type=click.Path(dir_okay=False), help="Lexico de cantidades (H/L/A)."),
        click.option("--rhyme-weights", type=click.Path(dir_okay=False), help="Pesos de los niveles de rima."),
        click.option("--min-lines", type=click.IntRange(min=0), help="Longitud minima de poema (0 conserva todos)."),
    )
    for option in reversed(options):
        f = option(f)
    return f


def pipeline_command(command: str):
    """
    Decorador que arma la corrida y traduce los errores de datos
    Args:
        command (str): nombre del subcomando, queda en run_config.json
    """
    def decorator(f):
        @wraps(f)
        def decorated_function(**kwargs):
            common = {name: kwargs.pop(name, None) for name in COMMON_OPTIONS}
            config = app.config
            run_config = RunConfig(
                command=command,
                corpus=common["corpus"] or config["CORPUS_MANIFEST"],
                seed=config["SEED"] if common["seed"] is None else common["seed"],
                output_dir=common["output"] or config["OUTPUT_DIR"],
                min_lines=config["MIN_LINES"] if common["min_lines"] is None else common["min_lines"],
                lexicon=common["lexicon"] or config["LEXICON"],
                rhyme_weights=common["rhyme_weights"] or config["RHYME_WEIGHTS"],
                params=kwargs,
            )
            app.logger.info("%s: %r", command, run_config)
            try:
                artifacts = ArtifactRepository(Workspace(run_config.output_dir), app.json)
                pipeline = PipelineService(run_config, artifacts)
                result = f(pipeline, **kwargs)
                pipeline.write_run_files()
                return result
            except DATA_ERRORS as e:
                app.logger.error("Error en %s: %s", command, e)
                raise DataError(str(e))
        return decorated_function
    return decorator

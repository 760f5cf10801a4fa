import logging
from importlib import metadata

import numpy as np

from src.models.features import POETIC_FEATURE_NAMES, LsaMatrix
from src.models.learn import MODELS, LabeledDataset
from src.models.poem import Corpus, Poem, PoemId
from src.models.run_config import RunConfig
from src.models.scansion import ScannedLine
from src.repositories.artifact_repository import ArtifactRepository
from src.repositories.lexicon_repository import LexiconRepository
from src.services.cluster_service import ClusterService
from src.services.corpus_service import CorpusService
from src.services.learn_service import LearnService, LearnServiceError
from src.services.lexsem_service import LexsemService
from src.services.outlier_service import OutlierService
from src.services.phonology_service import PhonologyService
from src.services.plot_service import PlotService
from src.services.poetics_service import PoeticsService
from src.services.scansion_service import ScansionService
from src.services.temporal_service import TemporalService, TemporalServiceError

logger = logging.getLogger(__name__)

PACKAGES = ("numpy", "scipy", "scikit-learn", "matplotlib", "Flask", "click")
FREE_TEXT = "texto"


class PipelineServiceError(Exception):
    pass


def _join(folder: str, name: str) -> str:
    return f"{folder}/{name}" if folder else name


class PipelineService:
    """Encadena las etapas del estudio y deja tablas, figuras y manifiesto en el directorio de salida."""

    def __init__(self, run_config: RunConfig, artifacts: ArtifactRepository):
        self.config = run_config
        self.artifacts = artifacts
        self.outputs: list[str] = []

        lexicon_repository = LexiconRepository()
        lexicon = lexicon_repository.load_macrons(run_config.lexicon)
        rhyme_weights = lexicon_repository.load_rhyme_weights(run_config.rhyme_weights)

        seed = run_config.seed
        self.corpus_service = CorpusService()
        self.phonology = PhonologyService(lexicon)
        self.scansion = ScansionService(self.phonology)
        self.poetics = PoeticsService(self.scansion, rhyme_weights)
        self.lexsem = LexsemService(seed)
        self.learn = LearnService(seed)
        self.outlier = OutlierService()
        self.cluster = ClusterService(seed)
        self.temporal = TemporalService(seed)
        self.plots = PlotService()

        self._corpus: Corpus | None = None
        self.removed: list[PoemId] = []
        self._poetic = None
        self._lsa: LsaMatrix | None = None

    # --- recursos compartidos ------------------------------------------------

    @property
    def corpus(self) -> Corpus:
        if self._corpus is None:
            if not self.config.corpus:
                raise PipelineServiceError("Falta el manifiesto del corpus (--corpus o ELEGIA_CORPUS)")
            loaded = self.corpus_service.load_corpus(self.config.corpus)
            corpus, self.removed = self.corpus_service.filter_by_length(loaded, self.config.min_lines)
            if not corpus.poems:
                raise PipelineServiceError(
                    f"Ningun poema de {self.config.corpus} alcanza {self.config.min_lines} versos")
            self._corpus = corpus
            logger.info("Corpus: %d poemas, %d versos", len(self._corpus), self._corpus.total_lines)
        return self._corpus

    def _poem(self, poem_id: PoemId) -> Poem:
        return next(poem for poem in self.corpus if poem.id == poem_id)

    def poetic_features(self):
        """(matriz cruda poemas x 43, ids, fallos)."""
        if self._poetic is None:
            matrix, ids, failures = self.poetics.feature_matrix(self.corpus.poems)
            if len(ids) < 2:
                raise PipelineServiceError("Menos de dos poemas con rasgos poeticos")
            self._poetic = (matrix, ids, failures)
        return self._poetic

    def lsa_features(self) -> LsaMatrix:
        if self._lsa is None:
            params = self.config.params
            texts = ["\n".join(self.phonology.transcribe(line) for line in poem.lines) for poem in self.corpus]
            self._lsa = self.lexsem.lsa(
                texts, self.corpus.ids,
                d=params.get("dims") or 50,
                sizes=tuple(params.get("ngram_sizes") or (2, 3, 4)),
                min_df=params.get("min_df") or 2,
                seed=self.config.seed,
            )
        return self._lsa

    def matrix(self, kind: str, scaled: bool = True) -> tuple[np.ndarray, list[PoemId]]:
        if kind == "lsa":
            lsa = self.lsa_features()
            return lsa.values, lsa.ids
        if kind == "poetic":
            matrix, ids, _ = self.poetic_features()
            return (self.poetics.z_scale(matrix) if scaled else matrix), ids
        raise PipelineServiceError(f"Tipo de rasgos desconocido: {kind}")

    def dataset(self, kind: str, label: str) -> LabeledDataset:
        # los rasgos poeticos se reescalan dentro de cada particion
        features, ids = self.matrix(kind, scaled=False)
        if label not in ("author", "work"):
            raise PipelineServiceError(f"Etiqueta desconocida: {label}")
        lengths = [self._poem(poem_id).line_count for poem_id in ids]
        return LabeledDataset(
            features=features,
            labels=[getattr(poem_id, label) for poem_id in ids],
            ids=ids,
            lengths=lengths,
            scale=kind == "poetic",
        )

    # --- artefactos --------------------------------------------------------------

    def _table(self, name: str, header, rows):
        self.artifacts.write_table(name, list(header), rows)
        self.outputs.append(name)

    def _figure(self, name: str, plot, *args, **kwargs):
        plot(*args, path=self.artifacts.figure_path(name), **kwargs)
        self.outputs.append(name)

    def write_run_files(self):
        """run_config.json y manifest.json: entradas, semilla, versiones y parametros."""
        self.artifacts.write_json("run_config.json", self.config)
        versions = {}
        for package in PACKAGES:
            try:
                versions[package] = metadata.version(package)
            except metadata.PackageNotFoundError:
                versions[package] = None
        manifest = {
            "command": self.config.command,
            "inputs": {
                "corpus": self.config.corpus,
                "poems": [str(p.path) for p in self._corpus] if self._corpus is not None else [],
                "removed": [str(poem) for poem in self.removed],
                "lexicon": self.config.lexicon,
                "rhyme_weights": self.config.rhyme_weights,
            },
            "seed": self.config.seed,
            "versions": versions,
            "parameters": self.config.params,
            "outputs": sorted(set(self.outputs)),
        }
        self.artifacts.write_json("manifest.json", manifest)

    # --- etapas ---------------------------------------------------------------

    def transcribe(self, lines: list[str], folder: str = "") -> list[str]:
        transcribed = [self.phonology.transcribe(line) for line in lines]
        self._table(_join(folder, "transcription.tsv"), ("line", "text", "transcription"),
                    [(n, line, t) for n, (line, t) in enumerate(zip(lines, transcribed), start=1)])
        return transcribed

    @staticmethod
    def _scan_row(poem: PoemId, number: int, line: ScannedLine, conflicts) -> tuple:
        caesurae = " ".join(f"{foot}{kind.value[0].upper()}" for foot, kind in line.caesurae)
        return (
            str(poem), number, line.meter.value, line.line.text, line.pattern, caesurae,
            " ".join(str(d) for d in line.diaereses), "".join("1" if c else "0" for c in conflicts),
            line.elision_count, line.prodelision_count, line.spondaic_fifth, line.ambiguous, line.hiatus,
            line.unscannable,
        )

    def scan(self, poems: list[Poem] | None = None, folder: str = "") -> list[tuple]:
        poems = self.corpus.poems if poems is None else poems
        rows, diagnostics = [], []
        for poem in poems:
            couplets, trailing, report = self.scansion.scan_poem(poem)
            lines = [line for c in couplets for line in (c.hexameter, c.pentameter)]
            if trailing is not None:
                lines.append(trailing)
            for number, line in enumerate(lines, start=1):
                conflicts = () if line.unscannable else self.scansion.detect_ictus_conflicts(line)
                rows.append(self._scan_row(poem.id, number, line, conflicts))
            diagnostics.append((report.poem, report.lines, report.unscannable, report.ambiguous,
                                report.hiatus, report.spondaic_fifth, report.odd_trailing_line))

        self._table(_join(folder, "scan.tsv"),
                    ("poem", "line", "meter", "transcription", "pattern", "caesurae", "diaereses",
                     "conflicts", "elisions", "prodelisions", "spondaic_fifth", "ambiguous", "hiatus",
                     "unscannable"), rows)
        self._table(_join(folder, "scan_diagnostics.tsv"),
                    ("poem", "lines", "unscannable", "ambiguous", "hiatus", "spondaic_fifth", "odd_trailing_line"),
                    diagnostics)
        return rows

    def scan_text(self, lines: list[str], label: str, folder: str = "") -> list[tuple]:
        poem = Poem(id=PoemId(FREE_TEXT, FREE_TEXT, label), lines=lines)
        return self.scan([poem], folder)

    def corpus_summary(self, folder: str = ""):
        works, total = self.corpus_service.summary(self.corpus)
        rows = [(w.author, w.work, w.poems, w.min_length, w.max_length) for w in works]
        rows.append(("", "Total", len(self.corpus), "", total))
        self._table(_join(folder, "corpus_summary.tsv"), ("author", "work", "poems", "min", "max"), rows)
        self._table(_join(folder, "removed_poems.tsv"), ("poem", "min_lines"),
                    [(str(poem), self.config.min_lines) for poem in self.removed])
        return works, total

    def features(self, poetic: bool = True, lsa: bool = True, folder: str = ""):
        self.corpus_summary(folder)
        if poetic:
            matrix, ids, failures = self.poetic_features()
            self._table(_join(folder, "poetic_features.tsv"), ("poem", "author", "work", *POETIC_FEATURE_NAMES),
                        [(str(i), i.author, i.work, *row.tolist()) for i, row in zip(ids, matrix)])
            self._table(_join(folder, "feature_failures.tsv"), ("poem", "error"),
                        [(str(poem), error) for poem, error in failures])
        if lsa:
            values = self.lsa_features()
            header = ("poem", "author", "work", *(f"LSA{n}" for n in range(1, values.model.dims + 1)))
            self._table(_join(folder, "lsa_features.tsv"), header,
                        [(str(i), i.author, i.work, *row.tolist()) for i, row in zip(values.ids, values.values)])

    def classify(self, kind: str = "lsa", label: str = "work", models=MODELS, trials: int = 100,
                 test_fraction: float = 0.2, thresholds=(), exclude=(), folder: str = ""):
        dataset = self.dataset(kind, label)
        results = []
        for model in models:
            result = self.learn.repeated_holdout(dataset, model, trials, test_fraction, seed=self.config.seed)
            results.append(result)
            confusion = result.confusion
            self._table(_join(folder, f"confusion_{model}.tsv"), ("actual", *confusion.classes),
                        [(c, *confusion.row(c).tolist()) for c in confusion.classes])
            self._figure(_join(folder, f"confusion_{model}.svg"), self.plots.plot_confusion, confusion,
                         title=f"{model} ({kind}, {label})")
        self._table(_join(folder, "accuracy.tsv"),
                    ("model", "accuracy", "macro_f1", "trials", "excluded_classes"),
                    [(r.model, r.accuracy, r.macro_f1, r.trials, " ".join(r.excluded_classes)) for r in results])
        self._table(_join(folder, "per_class_accuracy.tsv"), ("model", "class", "accuracy"),
                    [(r.model, c, v) for r in results for c, v in self.learn.per_class_accuracy(r.confusion).items()])

        if thresholds:
            points = self.learn.accuracy_vs_min_length(dataset, list(models), list(thresholds), trials,
                                                       test_fraction, seed=self.config.seed)
            self._table(_join(folder, "accuracy_curve.tsv"), ("model", "threshold", "poems", "accuracy", "macro_f1"),
                        [(p.model, p.threshold, p.poems, p.accuracy, p.macro_f1) for p in points])
            self._figure(_join(folder, "accuracy_curve.svg"), self.plots.plot_accuracy_curves, points,
                         title=f"{kind}, {label}")

        if exclude:
            rows = []
            for result in results:
                try:
                    ablated = self.learn.ablation(dataset, list(exclude), result.model, trials, test_fraction,
                                                  seed=self.config.seed)
                except LearnServiceError as e:
                    logger.warning("Ablacion omitida para %s: %s", result.model, e)
                    continue
                rows.append((result.model, " ".join(exclude), result.accuracy, ablated.accuracy,
                             ablated.accuracy - result.accuracy))
            self._table(_join(folder, "ablation.tsv"),
                        ("model", "excluded", "accuracy", "accuracy_without", "gain"), rows)
        return results

    def outliers(self, reference: list[str], confidence: float = 0.99, top_k: int = 5, folder: str = ""):
        matrix, ids = self.matrix("poetic")
        mask = np.array([poem.author in reference or poem.work in reference for poem in ids])
        report = self.outlier.outlier_report(matrix, ids, mask, confidence, top_k, list(POETIC_FEATURE_NAMES))
        rows = [
            (rank, str(e.poem), e.poem.author, e.poem.work, e.distance, e.p_value, e.accepted, e.in_reference,
             " ".join(f"{name}:{value:+.2f}" for name, value in e.contributions))
            for rank, e in enumerate(report.entries, start=1)
        ]
        self._table(_join(folder, "outliers.tsv"),
                    ("rank", "poem", "author", "work", "distance", "p_value", "accepted", "in_reference",
                     "top_features"), rows)
        self._table(_join(folder, "outlier_summary.tsv"), ("reference", "confidence", "poems", "in_reference",
                                                           "accepted_outside", "rejected_inside"),
                    [(" ".join(reference), confidence, len(report.entries), int(mask.sum()),
                      len(report.accepted_outside_reference), len(report.rejected_inside_reference))])
        return report

    def cluster_view(self, method: str = "bct", kind: str = "poetic", perplexity: float | None = None,
                     subsets: int = 500, subset_size: int = 15, k: int = 3, threshold: float = 0.05,
                     folder: str = ""):
        matrix, ids = self.matrix(kind)
        nodes = [str(poem) for poem in ids]
        groups = [self.corpus_service.group_of(poem) for poem in ids]

        if method == "bct":
            graph = self.cluster.consensus_graph(matrix, nodes, subsets, subset_size, k,
                                                 seed=self.config.seed, threshold=threshold)
            layout = self.cluster.layout_fr(graph, seed=self.config.seed)
            self._table(_join(folder, f"bct_{kind}_edges.tsv"), ("source", "target", "weight"),
                        self.cluster.edge_table(graph))
            cohesion = self.cluster.group_cohesion(graph, groups)
            rows = [(g, g, v) for g, v in cohesion.intra.items()]
            rows += [(a, b, v) for (a, b), v in cohesion.inter.items()]
            self._table(_join(folder, f"bct_{kind}_cohesion.tsv"), ("group", "other", "mean_weight"), rows)
            self._figure(_join(folder, f"bct_{kind}.svg"), self.plots.plot_graph, graph, layout, groups,
                         title=f"BCT ({kind})")
        elif method == "tsne":
            if perplexity is None:
                perplexity = 10.0 if kind == "lsa" else 12.0
            layout = self.cluster.tsne(matrix, perplexity, seed=self.config.seed)
            self._figure(_join(folder, f"tsne_{kind}.svg"), self.plots.plot_scatter, layout, groups,
                         title=f"t-SNE ({kind}, perplexity={perplexity:g})")
        else:
            raise PipelineServiceError(f"Metodo desconocido: {method}")

        self._table(_join(folder, f"{method}_{kind}_nodes.tsv"), ("id", "x", "y", "group"),
                    self.cluster.node_table(nodes, layout, groups))
        return layout

    def temporal_view(self, early: str = "Amores", late: str = "Ex Ponto", target: str = "Heroides",
                      folder: str = ""):
        matrix, ids = self.matrix("poetic")
        scores = self.temporal.temporal_scores(matrix, [poem.work for poem in ids], ids, early, late, target)
        self._table(_join(folder, "temporal.tsv"), ("poem", "letter", "group", "svm_score", "centroid_score"),
                    [(str(s.poem), s.poem.number, self.corpus_service.group_of(s.poem), s.svm_score,
                      s.centroid_score) for s in scores])

        trends = {}
        numbered = [s for s in scores if s.poem.number is not None]
        for kind in ("svm_score", "centroid_score"):
            try:
                trends[kind] = self.temporal.smooth_trend([s.poem.number for s in numbered],
                                                          [getattr(s, kind) for s in numbered])
            except TemporalServiceError as e:
                logger.warning("Sin tendencia para %s: %s", kind, e)
        self._table(_join(folder, "temporal_trend.tsv"), ("score", "x", "fitted", "lower", "upper"),
                    [(kind, *values) for kind, t in trends.items()
                     for values in zip(t.x.tolist(), t.fitted.tolist(), t.lower.tolist(), t.upper.tolist())])
        try:
            means = self.temporal.group_means(scores)
            self._table(_join(folder, "temporal_groups.tsv"), ("score", "letters_1_15", "letters_16_21"),
                        [(kind, m["early_group"], m["late_group"]) for kind, m in means.items()])
        except TemporalServiceError as e:
            logger.warning("Sin medias por grupo: %s", e)
        self._figure(_join(folder, "temporal.svg"), self.plots.plot_temporal, scores, trends,
                     title=f"{target}: {early} -> {late}")
        return scores

    def report(self):
        """El estudio completo con los parametros por defecto."""
        params = self.config.params
        trials = params.get("trials") or 100
        self.scan(folder="scan")
        self.features(folder="features")
        for kind in ("lsa", "poetic"):
            for label in ("work", "author"):
                self.classify(kind, label, MODELS, trials, thresholds=params.get("thresholds") or (),
                              exclude=("Ex Ponto",) if label == "work" and self._has_work("Ex Ponto") else (),
                              folder=f"classify/{kind}_{label}")
        self.outliers(params.get("reference") or ["Ovid"], params.get("confidence") or 0.99, folder="outliers")
        for kind in ("lsa", "poetic"):
            self.cluster_view("bct", kind, folder="cluster",
                              subsets=params.get("subsets") or 500, subset_size=params.get("subset_size") or 15)
            self.cluster_view("tsne", kind, folder="cluster")
        self.temporal_view(folder="temporal")

    def _has_work(self, work: str) -> bool:
        return any(poem.id.work == work for poem in self.corpus)

import logging
from collections import Counter

import numpy as np
from sklearn.linear_model import LogisticRegression
from sklearn.metrics import accuracy_score, confusion_matrix, f1_score
from sklearn.model_selection import ShuffleSplit, StratifiedShuffleSplit
from sklearn.multiclass import OneVsRestClassifier
from sklearn.neighbors import KNeighborsClassifier, NearestCentroid
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import StandardScaler
from sklearn.svm import LinearSVC

from src.models.learn import MODELS, AccuracyPoint, ConfusionMatrix, HoldoutResult, LabeledDataset

logger = logging.getLogger(__name__)

DEFAULT_NEIGHBOURS = 3


class LearnServiceError(Exception):
    pass


class LearnValueError(Exception):
    pass


class LearnService:
    def __init__(self, seed: int = 0):
        self.seed = seed

    def build_model(self, name: str, training_rows: int | None = None, scale: bool = False, seed: int | None = None):
        seed = self.seed if seed is None else seed
        if name == "nearest_centroid":
            model = NearestCentroid()
        elif name == "knn":
            k = DEFAULT_NEIGHBOURS if training_rows is None else min(DEFAULT_NEIGHBOURS, training_rows)
            model = KNeighborsClassifier(n_neighbors=k, metric="cosine", algorithm="brute", weights="distance")
        elif name == "linear_svm":
            model = LinearSVC(loss="hinge", dual=True, max_iter=10_000, random_state=seed)
        elif name == "logistic":
            model = OneVsRestClassifier(LogisticRegression(max_iter=1_000, random_state=seed))
        else:
            raise LearnValueError(f"Modelo desconocido: {name}. Opciones: {', '.join(MODELS)}")
        # la escala z se reajusta dentro de cada particion de entrenamiento
        return make_pipeline(StandardScaler(), model) if scale else model

    def classify(self, model: str, train: LabeledDataset, test: LabeledDataset | np.ndarray,
                 seed: int | None = None) -> np.ndarray:
        test_features = test.features if isinstance(test, LabeledDataset) else np.asarray(test, dtype=float)
        if len(train) == 0:
            raise LearnServiceError("El conjunto de entrenamiento esta vacio")
        if not (np.all(np.isfinite(train.features)) and np.all(np.isfinite(test_features))):
            raise LearnServiceError("Los rasgos contienen valores no finitos")
        if isinstance(test, LabeledDataset):
            unseen = sorted(set(test.classes) - set(train.classes))
            if unseen:
                raise LearnServiceError(f"Clases sin filas de entrenamiento: {', '.join(unseen)}")
        if len(train.classes) < 2:
            raise LearnServiceError("Se necesitan al menos dos clases para entrenar")

        estimator = self.build_model(model, len(train), train.scale, seed)
        estimator.fit(train.features, train.labels)
        return estimator.predict(test_features)

    def _stratifiable(self, dataset: LabeledDataset) -> tuple[LabeledDataset, list[str]]:
        sizes = Counter(dataset.labels.tolist())
        small = sorted(label for label, size in sizes.items() if size < 2)
        if small:
            logger.warning("Clases con menos de 2 poemas, fuera de la estratificacion: %s", ", ".join(small))
            dataset = dataset.subset(~np.isin(dataset.labels, small))
        return dataset, small

    def repeated_holdout(self, dataset: LabeledDataset, model: str, trials: int = 100,
                         test_fraction: float = 0.2, stratified: bool = True,
                         seed: int | None = None) -> HoldoutResult:
        seed = self.seed if seed is None else seed
        dataset, excluded = self._stratifiable(dataset)
        classes = dataset.classes
        if len(classes) < 2:
            raise LearnServiceError("Menos de dos clases con 2 o mas poemas")

        splitter_class = StratifiedShuffleSplit if stratified else ShuffleSplit
        splitter = splitter_class(n_splits=trials, test_size=test_fraction, random_state=seed)
        accuracies, f1_scores = [], []
        counts = np.zeros((len(classes), len(classes)))
        try:
            splits = list(splitter.split(dataset.features, dataset.labels))
        except ValueError as e:
            raise LearnServiceError(f"No se puede particionar: {e}")

        for train_index, test_index in splits:
            train, test = dataset.subset(_mask(train_index, len(dataset))), dataset.subset(_mask(test_index, len(dataset)))
            predicted = self.classify(model, train, test.features, seed)
            accuracies.append(accuracy_score(test.labels, predicted))
            f1_scores.append(f1_score(test.labels, predicted, average="macro", zero_division=0))
            counts += confusion_matrix(test.labels, predicted, labels=classes)

        return HoldoutResult(
            model=model,
            accuracy=float(np.mean(accuracies)),
            macro_f1=float(np.mean(f1_scores)),
            confusion=ConfusionMatrix(classes=classes, percentages=_row_percentages(counts)),
            trials=trials,
            excluded_classes=excluded,
        )

    def accuracy_vs_min_length(self, dataset: LabeledDataset, models: list[str], thresholds: list[int],
                               trials: int = 100, test_fraction: float = 0.2,
                               seed: int | None = None) -> list[AccuracyPoint]:
        if list(thresholds) != sorted(thresholds):
            raise LearnValueError("Los umbrales deben ser ascendentes")
        if dataset.lengths is None:
            raise LearnValueError("El conjunto no tiene longitudes de poema")

        points = []
        for threshold in thresholds:
            subset = dataset.subset(dataset.lengths >= threshold)
            for model in models:
                try:
                    result = self.repeated_holdout(subset, model, trials, test_fraction, seed=seed)
                except LearnServiceError as e:
                    logger.warning("Umbral %d omitido para %s: %s", threshold, model, e)
                    continue
                points.append(AccuracyPoint(model, threshold, len(subset), result.accuracy, result.macro_f1))
        return points

    def ablation(self, dataset: LabeledDataset, excluded: list[str], model: str, trials: int = 100,
                 test_fraction: float = 0.2, seed: int | None = None) -> HoldoutResult:
        missing = sorted(set(excluded) - set(dataset.classes))
        if missing:
            raise LearnValueError(f"Clases inexistentes: {', '.join(missing)}")
        kept = dataset.subset(~np.isin(dataset.labels, list(excluded)))
        return self.repeated_holdout(kept, model, trials, test_fraction, seed=seed)

    @staticmethod
    def per_class_accuracy(confusion: ConfusionMatrix) -> dict[str, float]:
        return confusion.diagonal()


def _mask(index: np.ndarray, size: int) -> np.ndarray:
    mask = np.zeros(size, dtype=bool)
    mask[index] = True
    return mask


def _row_percentages(counts: np.ndarray) -> np.ndarray:
    totals = counts.sum(axis=1, keepdims=True)
    return np.divide(100.0 * counts, totals, out=np.zeros_like(counts), where=totals > 0)

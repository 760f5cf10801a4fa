import numpy as np
import pytest

from src.models.learn import MODELS, LabeledDataset
from src.services.learn_service import LearnService, LearnServiceError, LearnValueError


class TestLearn:
    """Pruebas de los clasificadores y de la validacion repetida."""

    @pytest.fixture
    def learn(self) -> LearnService:
        return LearnService(seed=3)

    @pytest.fixture
    def blobs(self) -> LabeledDataset:
        """Dos nubes gaussianas bien separadas, 20 puntos cada una."""
        rng = np.random.default_rng(0)
        features = np.vstack([rng.normal(10.0, 1.0, (20, 2)), rng.normal(-10.0, 1.0, (20, 2))])
        labels = ["Amores"] * 20 + ["Heroides"] * 20
        return LabeledDataset(features=features, labels=labels, lengths=np.arange(40))

    @pytest.mark.parametrize("model", MODELS)
    def test_separable_blobs(self, learn: LearnService, blobs: LabeledDataset, model):
        """Prueba exactitud 1.0 de los cuatro modelos sobre datos separables."""
        # Arrange
        train = blobs.subset(np.arange(40) % 4 != 0)
        test = blobs.subset(np.arange(40) % 4 == 0)

        # Act
        predicted = learn.classify(model, train, test)

        # Assert
        assert np.array_equal(predicted, test.labels)

    def test_single_point_per_class(self, learn: LearnService):
        """Prueba que un punto igual a uno de entrenamiento recibe su clase."""
        # Arrange
        train = LabeledDataset(features=[[0.0, 1.0], [1.0, 0.0]], labels=["a", "b"])

        # Act
        predicted = learn.classify("nearest_centroid", train, np.array([[1.0, 0.0]]))

        # Assert
        assert predicted.tolist() == ["b"]

    def test_nearest_centroid_brute_force(self, learn: LearnService):
        """Prueba que el centroide mas cercano coincide con el calculo directo."""
        # Arrange
        rng = np.random.default_rng(1)
        train = LabeledDataset(features=rng.normal(size=(30, 4)), labels=np.repeat(["a", "b", "c"], 10))
        test = rng.normal(size=(15, 4))
        centroids = np.array([train.features[train.labels == c].mean(axis=0) for c in train.classes])
        distances = np.linalg.norm(test[:, None, :] - centroids[None, :, :], axis=-1)
        expected = np.array(train.classes)[distances.argmin(axis=1)]

        # Act
        predicted = learn.classify("nearest_centroid", train, test)

        # Assert
        assert np.array_equal(predicted, expected)

    def test_unseen_class(self, learn: LearnService, blobs: LabeledDataset):
        """Prueba el error cuando una clase de prueba no tiene filas de entrenamiento."""
        # Arrange
        train = blobs.subset(blobs.labels == "Amores")
        test = blobs.subset(blobs.labels == "Heroides")

        # Act / Assert
        with pytest.raises(LearnServiceError):
            learn.classify("knn", train, test)

    def test_non_finite_features(self, learn: LearnService, blobs: LabeledDataset):
        """Prueba el error con rasgos no finitos."""
        # Arrange
        blobs.features[0, 0] = np.nan

        # Act / Assert
        with pytest.raises(LearnServiceError):
            learn.classify("nearest_centroid", blobs, blobs)

    def test_unknown_model(self, learn: LearnService):
        """Prueba el error con un modelo desconocido."""
        # Act / Assert
        with pytest.raises(LearnValueError):
            learn.build_model("random_forest")

    def test_repeated_holdout_duplicates(self, learn: LearnService):
        """Prueba exactitud 1.0 y matriz diagonal con puntos duplicados por clase."""
        # Arrange
        features = np.repeat([[0.0, 5.0], [5.0, 0.0], [5.0, 5.0]], 5, axis=0)
        dataset = LabeledDataset(features=features, labels=np.repeat(["a", "b", "c"], 5))

        # Act
        result = learn.repeated_holdout(dataset, "nearest_centroid", trials=10)

        # Assert
        assert result.accuracy == 1.0
        assert result.macro_f1 == 1.0
        assert np.allclose(result.confusion.percentages, 100.0 * np.eye(3))

    @pytest.mark.parametrize("model", MODELS)
    def test_confusion_rows_sum_to_100(self, learn: LearnService, model):
        """Prueba que cada fila de la matriz de confusion suma 100."""
        # Arrange
        rng = np.random.default_rng(2)
        dataset = LabeledDataset(features=rng.normal(size=(30, 3)), labels=np.repeat(["a", "b", "c"], 10),
                                 scale=True)

        # Act
        result = learn.repeated_holdout(dataset, model, trials=5)

        # Assert
        assert np.allclose(result.confusion.percentages.sum(axis=1), 100.0, atol=0.5)
        assert 0.0 <= result.macro_f1 <= 1.0

    def test_repeated_holdout_reproducible(self, learn: LearnService, blobs: LabeledDataset):
        """Prueba que la misma semilla da el mismo resultado."""
        # Act
        first = learn.repeated_holdout(blobs, "knn", trials=5)
        second = LearnService(seed=3).repeated_holdout(blobs, "knn", trials=5)

        # Assert
        assert first.accuracy == second.accuracy
        assert np.array_equal(first.confusion.percentages, second.confusion.percentages)

    def test_small_class_excluded(self, learn: LearnService, blobs: LabeledDataset):
        """Prueba que una clase de un solo poema queda fuera con aviso."""
        # Arrange
        features = np.vstack([blobs.features, [[0.0, 0.0]]])
        labels = np.append(blobs.labels, "Sabinus")
        dataset = LabeledDataset(features=features, labels=labels)

        # Act
        result = learn.repeated_holdout(dataset, "nearest_centroid", trials=3)

        # Assert
        assert result.excluded_classes == ["Sabinus"]
        assert result.confusion.classes == ["Amores", "Heroides"]

    def test_accuracy_vs_min_length_single_threshold(self, learn: LearnService, blobs: LabeledDataset):
        """Prueba que el umbral 0 reproduce la validacion sobre todo el corpus."""
        # Act
        points = learn.accuracy_vs_min_length(blobs, ["nearest_centroid"], [0], trials=5)
        direct = learn.repeated_holdout(blobs, "nearest_centroid", trials=5)

        # Assert
        assert len(points) == 1
        assert points[0].accuracy == direct.accuracy
        assert points[0].poems == 40

    def test_accuracy_vs_min_length_rises(self, learn: LearnService):
        """Prueba que la exactitud sube cuando el umbral deja solo los poemas largos separables."""
        # Arrange
        rng = np.random.default_rng(4)
        labels = np.tile(["a", "b"], 40)
        lengths = np.repeat([10, 50], 40)
        signal = np.where(labels == "a", 5.0, -5.0)[:, None] * np.ones((80, 2))
        features = np.where(lengths[:, None] >= 50, signal, 0.0) + rng.normal(size=(80, 2))
        dataset = LabeledDataset(features=features, labels=labels, lengths=lengths)

        # Act
        points = learn.accuracy_vs_min_length(dataset, ["nearest_centroid"], [0, 50], trials=20)

        # Assert
        assert points[1].accuracy > points[0].accuracy
        assert points[1].accuracy == 1.0

    def test_thresholds_must_ascend(self, learn: LearnService, blobs: LabeledDataset):
        """Prueba el error con umbrales desordenados."""
        # Act / Assert
        with pytest.raises(LearnValueError):
            learn.accuracy_vs_min_length(blobs, ["knn"], [20, 0])

    def test_threshold_leaving_one_class_is_skipped(self, learn: LearnService, blobs: LabeledDataset):
        """Prueba que un umbral con una sola clase se omite."""
        # Act
        points = learn.accuracy_vs_min_length(blobs, ["nearest_centroid"], [0, 25], trials=3)

        # Assert
        assert [p.threshold for p in points] == [0]

    def test_ablation(self, learn: LearnService):
        """Prueba que retirar una clase confusa mejora la exactitud."""
        # Arrange
        rng = np.random.default_rng(5)
        centres = np.repeat([[5.0, 0.0], [-5.0, 0.0], [5.0, 0.5]], 20, axis=0)
        dataset = LabeledDataset(features=centres + rng.normal(scale=0.5, size=(60, 2)),
                                 labels=np.repeat(["Amores", "Tristia", "Ex Ponto"], 20))

        # Act
        full = learn.repeated_holdout(dataset, "nearest_centroid", trials=10)
        ablated = learn.ablation(dataset, ["Ex Ponto"], "nearest_centroid", trials=10)

        # Assert
        assert ablated.accuracy > full.accuracy
        assert "Ex Ponto" not in ablated.confusion.classes

    def test_ablation_unknown_class(self, learn: LearnService, blobs: LabeledDataset):
        """Prueba el error al retirar una clase inexistente."""
        # Act / Assert
        with pytest.raises(LearnValueError):
            learn.ablation(blobs, ["Fasti"], "knn")

    def test_per_class_accuracy(self, learn: LearnService, blobs: LabeledDataset):
        """Prueba la exactitud por clase tomada de la diagonal."""
        # Arrange
        result = learn.repeated_holdout(blobs, "nearest_centroid", trials=3)

        # Act
        per_class = learn.per_class_accuracy(result.confusion)

        # Assert
        assert per_class == {"Amores": 100.0, "Heroides": 100.0}

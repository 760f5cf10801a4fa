import numpy as np
import pytest
from scipy.stats import chi2

from src.models.features import POETIC_FEATURE_NAMES
from src.models.outlier import StyleModel
from src.models.poem import PoemId
from src.services.outlier_service import OutlierService, OutlierServiceError


class TestOutlier:
    """Pruebas del modelo de estilo y de la distancia de Mahalanobis."""

    @pytest.fixture
    def outlier(self) -> OutlierService:
        return OutlierService()

    @pytest.fixture
    def identity_model(self) -> StyleModel:
        """Modelo con covarianza identidad en 43 dimensiones."""
        return StyleModel(
            centroid=np.zeros(43),
            covariance=np.eye(43),
            regularization=0.0,
            dof=43,
            whitening=np.eye(43),
            feature_names=list(POETIC_FEATURE_NAMES),
        )

    def test_vector_at_centroid(self, outlier: OutlierService, identity_model: StyleModel):
        """Prueba d2 = 0 y P = 1 en el centroide."""
        # Act
        entry = outlier.mahalanobis_test(identity_model, np.zeros(43))

        # Assert
        assert entry.distance == 0.0
        assert entry.p_value == pytest.approx(1.0)
        assert entry.accepted

    def test_unit_displacement(self, outlier: OutlierService, identity_model: StyleModel):
        """Prueba d2 = 1 y la cola de chi cuadrado con 43 grados de libertad."""
        # Arrange
        vector = np.zeros(43)
        vector[0] = 1.0

        # Act
        entry = outlier.mahalanobis_test(identity_model, vector, top_k=3)

        # Assert
        assert entry.distance == pytest.approx(1.0)
        assert entry.p_value == pytest.approx(chi2.sf(1.0, 43))
        assert entry.contributions[0] == ("H1SP", pytest.approx(1.0))
        assert len(entry.contributions) == 3

    def test_rejection_at_confidence(self, outlier: OutlierService, identity_model: StyleModel):
        """Prueba que un vector lejano se rechaza al 99%."""
        # Arrange
        vector = np.full(43, 3.0)

        # Act
        entry = outlier.mahalanobis_test(identity_model, vector, confidence=0.99)

        # Assert
        assert entry.p_value < 0.01
        assert not entry.accepted

    def test_invalid_confidence(self, outlier: OutlierService, identity_model: StyleModel):
        """Prueba el error con un nivel de confianza fuera de (0, 1)."""
        # Act / Assert
        with pytest.raises(OutlierServiceError):
            outlier.mahalanobis_test(identity_model, np.zeros(43), confidence=1.0)

    def test_identity_covariance_estimate(self, outlier: OutlierService):
        """Prueba que 10 000 muestras normales estandar dan covarianza cercana a I."""
        # Arrange
        rng = np.random.default_rng(0)
        vectors = rng.normal(size=(10_000, 3))

        # Act
        model = outlier.fit_style_model(vectors, ["ELC", "LEN", "RS"])

        # Assert
        assert model.regularization == 0.0
        assert np.allclose(model.covariance, np.eye(3), atol=0.05)
        assert np.allclose(model.covariance, model.covariance.T)

    def test_chi2_calibration(self, outlier: OutlierService):
        """Prueba que la media de d2 sobre muestras nuevas queda a menos del 5% de 43."""
        # Arrange
        rng = np.random.default_rng(7)
        mixing = rng.normal(size=(43, 43)) / np.sqrt(43)
        covariance = mixing @ mixing.T + np.eye(43)
        fit_draws = rng.multivariate_normal(np.zeros(43), covariance, size=5000)
        test_draws = rng.multivariate_normal(np.zeros(43), covariance, size=10_000)
        model = outlier.fit_style_model(fit_draws)

        # Act
        distances = [outlier.mahalanobis_test(model, vector).distance for vector in test_draws]

        # Assert
        assert model.dof == 43
        assert np.mean(distances) == pytest.approx(43.0, rel=0.05)

    def test_identical_vectors(self, outlier: OutlierService):
        """Prueba que vectores identicos dejan solo la regularizacion lambda I."""
        # Arrange
        vectors = np.ones((5, 3))

        # Act
        model = outlier.fit_style_model(vectors, ["ELC", "LEN", "RS"])

        # Assert
        assert model.regularization > 0.0
        assert np.allclose(model.covariance, model.regularization * np.eye(3))
        assert np.all(np.linalg.eigvalsh(model.covariance) > 0)

    def test_too_few_vectors(self, outlier: OutlierService):
        """Prueba el error con menos de dos vectores."""
        # Act / Assert
        with pytest.raises(OutlierServiceError):
            outlier.fit_style_model(np.ones((1, 3)))

    def test_outlier_report(self, outlier: OutlierService):
        """Prueba que el informe ordena de mas a menos similar y marca la referencia."""
        # Arrange
        rng = np.random.default_rng(1)
        reference = rng.normal(size=(60, 4))
        foreign = rng.normal(loc=8.0, size=(3, 4))
        vectors = np.vstack([reference, foreign])
        ids = [PoemId("Ovid" if i < 60 else "Tibullus", "Obra", f"P. {i}") for i in range(63)]
        mask = np.arange(63) < 60

        # Act
        report = outlier.outlier_report(vectors, ids, mask, confidence=0.99, top_k=2,
                                        feature_names=["ELC", "LEN", "RS", "LEO"])

        # Assert
        p_values = [entry.p_value for entry in report.entries]
        assert p_values == sorted(p_values, reverse=True)
        assert all(0.0 <= p <= 1.0 for p in p_values)
        assert all(entry.distance >= 0.0 for entry in report.entries)
        assert report.accepted_outside_reference == []
        assert {entry.poem.author for entry in report.entries[-3:]} == {"Tibullus"}

    def test_empty_reference(self, outlier: OutlierService):
        """Prueba el error sin poemas de referencia."""
        # Arrange
        ids = [PoemId("Ovid", "Amores", f"Am. {i}") for i in range(3)]

        # Act / Assert
        with pytest.raises(OutlierServiceError):
            outlier.outlier_report(np.ones((3, 2)), ids, np.zeros(3, dtype=bool))

import logging

import numpy as np
import scipy.linalg
from scipy.stats import chi2

from src.models.features import POETIC_FEATURE_NAMES
from src.models.outlier import OutlierEntry, OutlierReport, StyleModel
from src.models.poem import PoemId

logger = logging.getLogger(__name__)

# fracciones de la media de la diagonal
RIDGE_LADDER = (0.0, 1e-6, 1e-4, 1e-2)
MAX_CONDITION = 1e6


class OutlierServiceError(Exception):
    pass


class OutlierService:
    def fit_style_model(self, vectors: np.ndarray, feature_names: list[str] | None = None) -> StyleModel:
        vectors = np.asarray(vectors, dtype=float)
        if vectors.ndim != 2 or len(vectors) < 2:
            raise OutlierServiceError("Se necesitan al menos 2 vectores para ajustar el modelo")
        rows, dof = vectors.shape
        if rows <= dof:
            logger.warning("%d vectores para %d rasgos: la covarianza dependera de la regularizacion", rows, dof)

        centroid = vectors.mean(axis=0)
        covariance = np.cov(vectors, rowvar=False).reshape(dof, dof)
        scale = float(np.mean(np.diag(covariance)))
        if scale <= 0:
            scale = 1.0

        for fraction in RIDGE_LADDER:
            regularization = fraction * scale
            candidate = covariance + regularization * np.eye(dof)
            eigenvalues = scipy.linalg.eigvalsh(candidate)
            if eigenvalues[0] > 0 and eigenvalues[-1] / eigenvalues[0] <= MAX_CONDITION:
                break
        else:
            logger.warning("La escalera de regularizacion no alcanza numero de condicion %.0e", MAX_CONDITION)
            if eigenvalues[0] <= 0:
                raise OutlierServiceError("Covarianza singular incluso tras regularizar")

        return StyleModel(
            centroid=centroid,
            covariance=candidate,
            regularization=regularization,
            dof=dof,
            whitening=self._whitening(candidate),
            feature_names=list(feature_names or POETIC_FEATURE_NAMES[:dof]),
        )

    @staticmethod
    def _whitening(covariance: np.ndarray) -> np.ndarray:
        """Sigma^(-1/2) simetrica."""
        eigenvalues, eigenvectors = scipy.linalg.eigh(covariance)
        if eigenvalues[0] <= 0:
            raise OutlierServiceError("Covarianza singular: no se puede blanquear")
        return (eigenvectors / np.sqrt(eigenvalues)) @ eigenvectors.T

    def mahalanobis_test(self, model: StyleModel, vector: np.ndarray, confidence: float = 0.99,
                         poem: PoemId | None = None, top_k: int = 5, in_reference: bool = False) -> OutlierEntry:
        if not 0.0 < confidence < 1.0:
            raise OutlierServiceError("El nivel de confianza debe estar en (0, 1)")
        if model.whitening is None:
            raise OutlierServiceError("Modelo sin matriz de blanqueo")

        residual = model.whitening @ (np.asarray(vector, dtype=float) - model.centroid)
        distance = float(residual @ residual)
        p_value = float(chi2.sf(distance, model.dof))

        ranked = np.argsort(-np.abs(residual), kind="stable")[:top_k]
        contributions = tuple((model.feature_names[i], float(residual[i])) for i in ranked)
        return OutlierEntry(
            poem=poem,
            distance=distance,
            p_value=p_value,
            accepted=p_value >= 1.0 - confidence,
            contributions=contributions,
            in_reference=in_reference,
        )

    def outlier_report(self, vectors: np.ndarray, ids: list[PoemId], reference: np.ndarray,
                       confidence: float = 0.99, top_k: int = 5,
                       feature_names: list[str] | None = None) -> OutlierReport:
        """Ajusta sobre las filas de referencia y prueba todos los poemas, de mas a menos similar."""
        vectors = np.asarray(vectors, dtype=float)
        reference = np.asarray(reference, dtype=bool)
        if not reference.any():
            raise OutlierServiceError("El conjunto de referencia esta vacio")

        model = self.fit_style_model(vectors[reference], feature_names)
        entries = [
            self.mahalanobis_test(model, vector, confidence, poem, top_k, bool(member))
            for vector, poem, member in zip(vectors, ids, reference)
        ]
        entries.sort(key=lambda e: (-e.p_value, e.distance))
        report = OutlierReport(confidence=confidence, entries=entries)
        logger.info("Fuera de la referencia aceptados: %d; dentro rechazados: %d",
                    len(report.accepted_outside_reference), len(report.rejected_inside_reference))
        return report

import logging

import numpy as np

from src.models.poem import PoemId
from src.models.temporal import TemporalScore, Trend
from src.services.learn_service import LearnService

logger = logging.getLogger(__name__)

SPAN = 0.75
BOOTSTRAPS = 200


class TemporalServiceError(Exception):
    pass


def _tricube(u: np.ndarray) -> np.ndarray:
    u = np.clip(np.abs(u), 0.0, 1.0)
    return (1 - u ** 3) ** 3


class TemporalService:
    def __init__(self, seed: int = 0):
        self.seed = seed

    def temporal_scores(self, features: np.ndarray, works: list[str], ids: list[PoemId],
                        early: str, late: str, target: str) -> list[TemporalScore]:
        """Puntuaciones de los poemas de `target`; positivo = lado tardio."""
        features = np.asarray(features, dtype=float)
        works = np.asarray(works)
        for work in (early, late, target):
            if not np.any(works == work):
                raise TemporalServiceError(f"Falta la obra de referencia {work}")

        reference = (works == early) | (works == late)
        late_labels = (works[reference] == late).astype(int)
        svm = LearnService(self.seed).build_model("linear_svm")
        svm.fit(features[reference], late_labels)
        norm = np.linalg.norm(svm.coef_)

        early_centroid = features[works == early].mean(axis=0)
        late_centroid = features[works == late].mean(axis=0)

        selected = np.flatnonzero(works == target)
        svm_scores = svm.decision_function(features[selected]) / norm
        scores = [
            TemporalScore(
                poem=ids[i],
                svm_score=float(svm_score),
                centroid_score=self.centroid_score(features[i], early_centroid, late_centroid),
            )
            for i, svm_score in zip(selected, svm_scores)
        ]
        return sorted(scores, key=lambda s: (s.poem.number is None, s.poem.number or 0, s.poem.index))

    @staticmethod
    def centroid_score(vector: np.ndarray, early_centroid: np.ndarray, late_centroid: np.ndarray) -> float:
        return float(np.linalg.norm(vector - early_centroid) - np.linalg.norm(vector - late_centroid))

    @staticmethod
    def _local_linear(x: np.ndarray, y: np.ndarray, grid: np.ndarray, span: float) -> np.ndarray:
        """Regresion local lineal con pesos tricubicos sobre la fraccion `span` de vecinos."""
        neighbours = max(2, int(np.ceil(span * len(x))))
        fitted = np.empty(len(grid))
        for g, point in enumerate(grid):
            distance = np.abs(x - point)
            radius = np.sort(distance)[min(neighbours, len(x)) - 1]
            weights = _tricube(distance / radius) if radius > 0 else (distance == 0).astype(float)
            design = np.column_stack([np.ones_like(x), x - point])
            sqrt_w = np.sqrt(weights)
            coefficients, *_ = np.linalg.lstsq(design * sqrt_w[:, None], y * sqrt_w, rcond=None)
            fitted[g] = coefficients[0]
        return fitted

    def smooth_trend(self, x, y, span: float = SPAN, boots: int = BOOTSTRAPS, points: int = 50,
                     seed: int | None = None) -> Trend:
        x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        if len(x) < 3:
            raise TemporalServiceError("Se necesitan al menos tres puntos para la tendencia")
        grid = np.linspace(x.min(), x.max(), points)
        fitted = self._local_linear(x, y, grid, span)

        rng = np.random.default_rng(self.seed if seed is None else seed)
        resampled = np.empty((boots, points))
        for b in range(boots):
            index = rng.integers(0, len(x), size=len(x))
            resampled[b] = self._local_linear(x[index], y[index], grid, span)
        lower, upper = np.nanpercentile(resampled, [2.5, 97.5], axis=0)
        return Trend(x=grid, fitted=fitted, lower=lower, upper=upper)

    @staticmethod
    def group_means(scores: list[TemporalScore], split: int = 15) -> dict[str, dict[str, float]]:
        """Media de cada puntuacion para las cartas hasta `split` y las posteriores."""
        first = [s for s in scores if s.poem.number is not None and s.poem.number <= split]
        second = [s for s in scores if s.poem.number is not None and s.poem.number > split]
        if not first or not second:
            raise TemporalServiceError(f"Ambos grupos (<= {split} y > {split}) deben tener cartas")
        return {
            kind: {
                "early_group": float(np.mean([getattr(s, kind) for s in first])),
                "late_group": float(np.mean([getattr(s, kind) for s in second])),
            }
            for kind in ("svm_score", "centroid_score")
        }

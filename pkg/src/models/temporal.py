from dataclasses import dataclass

import numpy as np

from src.models.poem import PoemId


@dataclass(frozen=True)
class TemporalScore:
    """Positivo = mas cerca del estilo tardio (Ex Ponto)."""

    poem: PoemId
    svm_score: float
    centroid_score: float


@dataclass
class Trend:
    x: np.ndarray
    fitted: np.ndarray
    lower: np.ndarray
    upper: np.ndarray

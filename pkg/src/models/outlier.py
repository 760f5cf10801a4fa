from dataclasses import dataclass, field

import numpy as np

from src.models.poem import PoemId


@dataclass
class StyleModel:
    centroid: np.ndarray
    covariance: np.ndarray  # ya regularizada
    regularization: float
    dof: int
    # Sigma^(-1/2) simetrica; el residuo blanqueado conserva el orden de los rasgos
    whitening: np.ndarray = field(repr=False, default=None)
    feature_names: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class OutlierEntry:
    poem: PoemId | None
    distance: float  # Mahalanobis al cuadrado
    p_value: float
    accepted: bool
    contributions: tuple[tuple[str, float], ...] = ()
    in_reference: bool = False


@dataclass
class OutlierReport:
    confidence: float
    entries: list[OutlierEntry]

    @property
    def accepted_outside_reference(self) -> list[OutlierEntry]:
        return [e for e in self.entries if e.accepted and not e.in_reference]

    @property
    def rejected_inside_reference(self) -> list[OutlierEntry]:
        return [e for e in self.entries if not e.accepted and e.in_reference]

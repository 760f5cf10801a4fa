from dataclasses import dataclass, field

import numpy as np

from src.models.poem import PoemId

MODELS = ("nearest_centroid", "knn", "linear_svm", "logistic")


@dataclass
class LabeledDataset:
    features: np.ndarray
    labels: np.ndarray
    ids: list[PoemId] = field(default_factory=list)
    lengths: np.ndarray | None = None
    # los rasgos poeticos se reescalan (z) dentro de cada particion
    scale: bool = False

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=float)
        self.labels = np.asarray(self.labels)
        if len(self.features) != len(self.labels):
            raise ValueError("El numero de filas no coincide con el de etiquetas")
        if self.lengths is not None:
            self.lengths = np.asarray(self.lengths)

    def subset(self, mask: np.ndarray) -> "LabeledDataset":
        mask = np.asarray(mask, dtype=bool)
        return LabeledDataset(
            features=self.features[mask],
            labels=self.labels[mask],
            ids=[poem for poem, keep in zip(self.ids, mask) if keep],
            lengths=None if self.lengths is None else self.lengths[mask],
            scale=self.scale,
        )

    @property
    def classes(self) -> list[str]:
        return sorted(set(self.labels.tolist()))

    def __len__(self):
        return len(self.labels)


@dataclass
class ConfusionMatrix:
    classes: list[str]
    # porcentajes medios: fila = clase real, columna = clase predicha
    percentages: np.ndarray

    def row(self, label: str) -> np.ndarray:
        return self.percentages[self.classes.index(label)]

    def diagonal(self) -> dict[str, float]:
        return {label: float(self.percentages[i, i]) for i, label in enumerate(self.classes)}


@dataclass
class HoldoutResult:
    model: str
    accuracy: float
    macro_f1: float
    confusion: ConfusionMatrix
    trials: int
    excluded_classes: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class AccuracyPoint:
    model: str
    threshold: int
    poems: int
    accuracy: float
    macro_f1: float

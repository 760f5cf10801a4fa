from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from src.models.poem import PoemId

HEXAMETER_FEATURES = (
    [f"H{n}SP" for n in range(1, 5)]
    + [f"H{n}CF" for n in range(1, 7)]
    + [f"H{n}DI" for n in range(1, 6)]
    + [f"H{n}SC" for n in range(1, 6)]
    + [f"H{n}WC" for n in range(1, 6)]
)
# P3SP y P4SP no aportan nada: los dos ultimos pies son dactilos obligatorios
PENTAMETER_FEATURES = (
    [f"P{n}SP" for n in range(1, 3)]
    + [f"P{n}CF" for n in range(1, 5)]
    + ["P1DI"]
    + [f"P{n}SC" for n in range(1, 3)]
    + [f"P{n}WC" for n in range(1, 5)]
)
SCALAR_FEATURES = ["ELC", "LEN", "RS", "LEO", "PFSD"]

POETIC_FEATURE_NAMES: tuple[str, ...] = tuple(HEXAMETER_FEATURES + PENTAMETER_FEATURES + SCALAR_FEATURES)

NgramCounts = Counter


class RhymeKind(str, Enum):
    VERTICAL = "vertical"
    LEONINE = "leonine"


@dataclass(frozen=True)
class RhymeScore:
    strength: float
    kind: RhymeKind = RhymeKind.VERTICAL


@dataclass
class PoeticFeatureVector:
    poem: PoemId
    values: dict[str, float]

    def __post_init__(self):
        missing = [name for name in POETIC_FEATURE_NAMES if name not in self.values]
        if missing:
            raise ValueError(f"Faltan rasgos: {', '.join(missing)}")

    def as_array(self) -> np.ndarray:
        return np.array([self.values[name] for name in POETIC_FEATURE_NAMES], dtype=float)

    def __getitem__(self, name: str) -> float:
        return self.values[name]

    def __len__(self):
        return len(POETIC_FEATURE_NAMES)


@dataclass
class LsaModel:
    vocabulary: list[str]
    idf: np.ndarray
    components: np.ndarray  # d x |vocabulario|, filas ortonormales
    singular_values: np.ndarray
    sizes: tuple[int, ...] = (2, 3, 4)

    @property
    def dims(self) -> int:
        return len(self.singular_values)


@dataclass
class LsaMatrix:
    ids: list[PoemId]
    values: np.ndarray  # poemas x d = U_d * Sigma_d
    model: LsaModel | None = field(default=None, repr=False)

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

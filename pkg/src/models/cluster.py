from dataclasses import dataclass, field

import numpy as np


@dataclass
class ConsensusGraph:
    nodes: list[str]
    weights: np.ndarray  # simetrica, en [0, 1], diagonal nula
    subsets: int = 0

    @property
    def edges(self) -> list[tuple[int, int, float]]:
        upper = np.triu(self.weights, k=1)
        rows, cols = np.nonzero(upper)
        return [(int(i), int(j), float(upper[i, j])) for i, j in zip(rows, cols)]

    def __len__(self):
        return len(self.nodes)


@dataclass
class Layout2D:
    coordinates: np.ndarray  # n x 2
    kl_divergence: float | None = None
    history: list[float] = field(default_factory=list, repr=False)
    # entropia lograda por punto en la busqueda de anchos de banda (t-SNE)
    entropies: np.ndarray | None = field(default=None, repr=False)


@dataclass
class GroupCohesion:
    # peso medio de las aristas dentro de cada grupo y entre cada par de grupos
    intra: dict[str, float]
    inter: dict[tuple[str, str], float]

    def between(self, first: str, second: str) -> float:
        return self.inter[tuple(sorted((first, second)))]

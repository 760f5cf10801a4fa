import logging

import numpy as np
from scipy.sparse.csgraph import connected_components
from scipy.spatial.distance import pdist, squareform
from sklearn.neighbors import NearestNeighbors

from src.models.cluster import ConsensusGraph, GroupCohesion, Layout2D

logger = logging.getLogger(__name__)

EDGE_THRESHOLD = 0.05
EXAGGERATION = 12.0
EXAGGERATION_ITERATIONS = 250
COMPONENT_GAP = 0.1


class ClusterServiceError(Exception):
    pass


class ClusterService:
    def __init__(self, seed: int = 0):
        self.seed = seed

    # --- grafo de consenso --------------------------------------------------

    def consensus_graph(self, matrix: np.ndarray, nodes: list[str], subsets: int = 500, subset_size: int = 15,
                        k: int = 3, metric: str = "cosine", seed: int | None = None,
                        threshold: float = EDGE_THRESHOLD) -> ConsensusGraph:
        matrix = np.asarray(matrix, dtype=float)
        count, features = matrix.shape
        if subset_size > features:
            raise ClusterServiceError(f"subset_size={subset_size} supera los {features} rasgos disponibles")
        if count < 2:
            raise ClusterServiceError("Se necesitan al menos dos nodos")
        if subsets < 1:
            raise ClusterServiceError("Se necesita al menos un subconjunto")
        k = min(k, count - 1)

        rng = np.random.default_rng(self.seed if seed is None else seed)
        counts = np.zeros((count, count))
        for _ in range(subsets):
            columns = rng.choice(features, size=subset_size, replace=False)
            data = matrix[:, columns]
            finder = NearestNeighbors(n_neighbors=k + 1, metric=metric, algorithm="brute").fit(data)
            _, neighbours = finder.kneighbors(data)
            for i, row in enumerate(neighbours):
                # el propio punto no siempre sale primero cuando hay empates
                others = [j for j in row if j != i][:k]
                counts[i, others] += 1

        weights = (counts + counts.T) / (2 * subsets)
        weights[weights < threshold] = 0.0
        np.fill_diagonal(weights, 0.0)
        return ConsensusGraph(nodes=list(nodes), weights=weights, subsets=subsets)

    def group_cohesion(self, graph: ConsensusGraph, groups: list[str]) -> GroupCohesion:
        labels = np.asarray(groups)
        names = sorted(set(groups))
        intra, inter = {}, {}
        for a, first in enumerate(names):
            members = np.flatnonzero(labels == first)
            if len(members) > 1:
                block = graph.weights[np.ix_(members, members)]
                intra[first] = float(block[np.triu_indices(len(members), k=1)].mean())
            else:
                intra[first] = 0.0
            for second in names[a + 1:]:
                others = np.flatnonzero(labels == second)
                inter[(first, second)] = float(graph.weights[np.ix_(members, others)].mean())
        return GroupCohesion(intra=intra, inter=inter)

    def node_weight_by_group(self, graph: ConsensusGraph, groups: list[str], node: int) -> dict[str, float]:
        """Peso total de las aristas de un nodo hacia cada grupo."""
        totals: dict[str, float] = {}
        for j, group in enumerate(groups):
            if j != node:
                totals[group] = totals.get(group, 0.0) + float(graph.weights[node, j])
        return totals

    # --- Fruchterman-Reingold ------------------------------------------------------

    @staticmethod
    def layout_energy(weights: np.ndarray, coordinates: np.ndarray) -> float:
        """Energia cuyo gradiente son las fuerzas: sum w d^3 / 3k - sum k^2 ln d."""
        count = len(coordinates)
        if count < 2:
            return 0.0
        k = np.sqrt(1.0 / count)
        distance = np.maximum(pdist(coordinates), 1e-9)
        w = squareform(weights, checks=False)
        return float(np.sum(w * distance ** 3 / (3 * k)) - np.sum(k * k * np.log(distance)))

    def _fruchterman_reingold(self, weights: np.ndarray, iterations: int, rng: np.random.Generator):
        count = len(weights)
        k = np.sqrt(1.0 / count)
        position = rng.random((count, 2))
        temperature = 0.1
        cooling = temperature / (iterations + 1)
        history = [self.layout_energy(weights, position)]

        for _ in range(iterations):
            delta = position[:, None, :] - position[None, :, :]
            distance = np.linalg.norm(delta, axis=-1)
            np.clip(distance, 0.01, None, out=distance)
            force = k * k / distance ** 2 - weights * distance / k
            displacement = np.einsum("ijk,ij->ik", delta, force)
            length = np.linalg.norm(displacement, axis=-1)
            step = np.minimum(length, temperature) / np.where(length > 0, length, 1.0)
            position += displacement * step[:, None]
            temperature -= cooling
            history.append(self.layout_energy(weights, position))
        return position, history

    def layout_fr(self, graph: ConsensusGraph, iterations: int = 500, seed: int | None = None) -> Layout2D:
        count = len(graph)
        if count == 0:
            return Layout2D(coordinates=np.empty((0, 2)))
        if count == 1:
            return Layout2D(coordinates=np.zeros((1, 2)))

        rng = np.random.default_rng(self.seed if seed is None else seed)
        components, labels = connected_components(graph.weights > 0, directed=False)
        coordinates = np.zeros((count, 2))
        history = np.zeros(iterations + 1)
        offset = 0.0
        for component in range(components):
            members = np.flatnonzero(labels == component)
            if len(members) == 1:
                local, local_history = np.zeros((1, 2)), [0.0] * (iterations + 1)
            else:
                sub = graph.weights[np.ix_(members, members)]
                local, local_history = self._fruchterman_reingold(sub, iterations, rng)
            history += local_history
            # componentes en fila, de izquierda a derecha
            local = local - local.min(axis=0)
            local[:, 0] += offset
            offset = local[:, 0].max() + COMPONENT_GAP
            coordinates[members] = local

        if components > 1:
            logger.info("Grafo con %d componentes conexas", components)
        return Layout2D(coordinates=coordinates, history=history.tolist())

    # --- t-SNE -----------------------------------------------------------------

    @staticmethod
    def _affinities(distances: np.ndarray, perplexity: float, tolerance: float = 1e-5, steps: int = 200):
        """Busqueda binaria de beta por punto hasta que la entropia sea ln(perplejidad)."""
        count = len(distances)
        target = np.log(perplexity)
        conditional = np.zeros((count, count))
        entropies = np.zeros(count)
        for i in range(count):
            mask = np.arange(count) != i
            row = distances[i, mask]
            row = row - row.min()
            beta, lower, upper = 1.0, -np.inf, np.inf
            for _ in range(steps):
                p = np.exp(-row * beta)
                total = p.sum()
                entropy = np.log(total) + beta * np.sum(row * p) / total
                difference = entropy - target
                if abs(difference) <= tolerance:
                    break
                if difference > 0:
                    lower = beta
                    beta = beta * 2 if upper == np.inf else (beta + upper) / 2
                else:
                    upper = beta
                    beta = beta / 2 if lower == -np.inf else (beta + lower) / 2
            conditional[i, mask] = p / total
            entropies[i] = entropy
        return conditional, entropies

    @staticmethod
    def _kl(p: np.ndarray, q: np.ndarray) -> float:
        return float(np.sum(p * np.log(p / q)))

    @staticmethod
    def _student_kernel(embedding: np.ndarray):
        numerator = 1.0 / (1.0 + squareform(pdist(embedding, "sqeuclidean")))
        np.fill_diagonal(numerator, 0.0)
        q = np.maximum(numerator / numerator.sum(), 1e-12)
        return numerator, q

    def tsne(self, matrix: np.ndarray, perplexity: float = 30.0, seed: int | None = None,
             iterations: int = 1000, learning_rate: float = 200.0) -> Layout2D:
        data = np.asarray(matrix, dtype=float)
        count = len(data)
        bound = (count - 1) / 3
        if not perplexity < bound:
            raise ClusterServiceError(
                f"Perplejidad {perplexity} no factible para {count} puntos: debe ser menor que {bound:.2f}")

        conditional, entropies = self._affinities(squareform(pdist(data, "sqeuclidean")), perplexity)
        p = np.maximum((conditional + conditional.T) / (2 * count), 1e-12)

        rng = np.random.default_rng(self.seed if seed is None else seed)
        embedding = rng.normal(scale=1e-4, size=(count, 2))
        velocity = np.zeros_like(embedding)
        gains = np.ones_like(embedding)
        history = [self._kl(p, self._student_kernel(embedding)[1])]

        for iteration in range(iterations):
            early = iteration < EXAGGERATION_ITERATIONS
            exaggeration = EXAGGERATION if early else 1.0
            momentum = 0.5 if early else 0.8

            numerator, q = self._student_kernel(embedding)
            pq = (exaggeration * p - q) * numerator
            gradient = 4.0 * (np.diag(pq.sum(axis=1)) - pq) @ embedding

            same_sign = (gradient > 0) == (velocity > 0)
            gains = np.where(same_sign, gains * 0.8, gains + 0.2)
            np.maximum(gains, 0.01, out=gains)
            velocity = momentum * velocity - learning_rate * gains * gradient
            embedding = embedding + velocity
            embedding -= embedding.mean(axis=0)
            history.append(self._kl(p, self._student_kernel(embedding)[1]))

        return Layout2D(coordinates=embedding, kl_divergence=history[-1], history=history, entropies=entropies)

    # --- tablas ------------------------------------------------------------------

    @staticmethod
    def node_table(nodes: list[str], layout: Layout2D, groups: list[str]) -> list[tuple]:
        return [(node, float(x), float(y), group)
                for node, (x, y), group in zip(nodes, layout.coordinates, groups)]

    @staticmethod
    def edge_table(graph: ConsensusGraph) -> list[tuple]:
        return [(graph.nodes[i], graph.nodes[j], weight) for i, j, weight in graph.edges]

import numpy as np
import pytest
from sklearn.cluster import KMeans
from sklearn.metrics import adjusted_rand_score
from sklearn.neighbors import NearestNeighbors

from src.models.cluster import ConsensusGraph
from src.services.cluster_service import ClusterService, ClusterServiceError


class TestCluster:
    """Pruebas del grafo de consenso, Fruchterman-Reingold y t-SNE."""

    @pytest.fixture
    def cluster(self) -> ClusterService:
        return ClusterService(seed=11)

    @pytest.fixture
    def noise(self) -> np.ndarray:
        """Diez puntos de ruido en 20 rasgos."""
        return np.random.default_rng(0).normal(size=(10, 20))

    def _nodes(self, count: int) -> list[str]:
        return [f"P. {i}" for i in range(count)]

    def test_duplicated_points(self, cluster: ClusterService, noise: np.ndarray):
        """Prueba que dos puntos identicos quedan unidos con peso 1.0."""
        # Arrange
        noise[1] = noise[0]

        # Act
        graph = cluster.consensus_graph(noise, self._nodes(10), subsets=50, subset_size=5, k=3)

        # Assert
        assert graph.weights[0, 1] == pytest.approx(1.0)

    def test_graph_invariants(self, cluster: ClusterService, noise: np.ndarray):
        """Prueba simetria, rango [0, 1] y diagonal nula."""
        # Act
        graph = cluster.consensus_graph(noise, self._nodes(10), subsets=100, subset_size=5, k=3)

        # Assert
        assert np.allclose(graph.weights, graph.weights.T)
        assert graph.weights.min() >= 0.0
        assert graph.weights.max() <= 1.0
        assert np.all(np.diag(graph.weights) == 0.0)

    def test_single_subset_is_plain_knn(self, cluster: ClusterService, noise: np.ndarray):
        """Prueba que un unico subconjunto con todos los rasgos da el grafo kNN simple."""
        # Arrange
        finder = NearestNeighbors(n_neighbors=4, metric="cosine", algorithm="brute").fit(noise)
        _, neighbours = finder.kneighbors(noise)
        counts = np.zeros((10, 10))
        for i, row in enumerate(neighbours):
            counts[i, [j for j in row if j != i][:3]] += 1
        expected = (counts + counts.T) / 2

        # Act
        graph = cluster.consensus_graph(noise, self._nodes(10), subsets=1, subset_size=20, k=3)

        # Assert
        assert np.allclose(graph.weights, expected)

    def test_subset_larger_than_features(self, cluster: ClusterService, noise: np.ndarray):
        """Prueba el error cuando el subconjunto supera los rasgos."""
        # Act / Assert
        with pytest.raises(ClusterServiceError):
            cluster.consensus_graph(noise, self._nodes(10), subset_size=21)

    def test_consensus_is_reproducible(self, cluster: ClusterService, noise: np.ndarray):
        """Prueba que la misma semilla da el mismo grafo."""
        # Act
        first = cluster.consensus_graph(noise, self._nodes(10), subsets=30, subset_size=5)
        second = ClusterService(seed=11).consensus_graph(noise, self._nodes(10), subsets=30, subset_size=5)

        # Assert
        assert np.array_equal(first.weights, second.weights)

    def test_group_cohesion(self, cluster: ClusterService):
        """Prueba los pesos medios dentro y entre grupos."""
        # Arrange
        weights = np.array([
            [0.0, 1.0, 0.2, 0.0],
            [1.0, 0.0, 0.0, 0.2],
            [0.2, 0.0, 0.0, 0.5],
            [0.0, 0.2, 0.5, 0.0],
        ])
        graph = ConsensusGraph(nodes=self._nodes(4), weights=weights)
        groups = ["Double Heroides", "Double Heroides", "Single Heroides", "Single Heroides"]

        # Act
        cohesion = cluster.group_cohesion(graph, groups)
        by_group = cluster.node_weight_by_group(graph, groups, 2)

        # Assert
        assert cohesion.intra == {"Double Heroides": 1.0, "Single Heroides": 0.5}
        assert cohesion.between("Single Heroides", "Double Heroides") == pytest.approx(0.1)
        assert by_group == {"Double Heroides": pytest.approx(0.2), "Single Heroides": 0.5}

    def test_two_node_equilibrium(self, cluster: ClusterService):
        """Prueba que dos nodos unidos quedan a la distancia de equilibrio sqrt(1/2)."""
        # Arrange
        graph = ConsensusGraph(nodes=self._nodes(2), weights=np.array([[0.0, 1.0], [1.0, 0.0]]))

        # Act
        layout = cluster.layout_fr(graph, iterations=500)

        # Assert
        distance = np.linalg.norm(layout.coordinates[0] - layout.coordinates[1])
        assert distance == pytest.approx(np.sqrt(0.5), abs=1e-2)

    def test_single_node_at_origin(self, cluster: ClusterService):
        """Prueba que un nodo solo queda en el origen."""
        # Arrange
        graph = ConsensusGraph(nodes=["Ep. 15"], weights=np.zeros((1, 1)))

        # Act
        layout = cluster.layout_fr(graph)

        # Assert
        assert np.array_equal(layout.coordinates, np.zeros((1, 2)))

    def test_cycle_energy_decreases(self, cluster: ClusterService):
        """Prueba que la energia final no supera la inicial en un ciclo de cuatro nodos."""
        # Arrange
        weights = np.roll(np.eye(4), 1, axis=1) + np.roll(np.eye(4), -1, axis=1)
        graph = ConsensusGraph(nodes=self._nodes(4), weights=weights)

        # Act
        layout = cluster.layout_fr(graph, iterations=300)

        # Assert
        assert layout.history[-1] <= layout.history[0]

    def test_components_side_by_side(self, cluster: ClusterService):
        """Prueba que las componentes desconectadas no se solapan."""
        # Arrange
        weights = np.zeros((4, 4))
        weights[0, 1] = weights[1, 0] = 1.0
        weights[2, 3] = weights[3, 2] = 1.0
        graph = ConsensusGraph(nodes=self._nodes(4), weights=weights)

        # Act
        layout = cluster.layout_fr(graph, iterations=100)

        # Assert
        xs = layout.coordinates[:, 0]
        assert max(xs[:2]) < min(xs[2:])

    def test_layout_is_reproducible(self, cluster: ClusterService):
        """Prueba que la misma semilla da la misma disposicion."""
        # Arrange
        weights = np.roll(np.eye(5), 1, axis=1) + np.roll(np.eye(5), -1, axis=1)
        graph = ConsensusGraph(nodes=self._nodes(5), weights=weights)

        # Act
        first = cluster.layout_fr(graph, iterations=50)
        second = ClusterService(seed=11).layout_fr(graph, iterations=50)

        # Assert
        assert np.array_equal(first.coordinates, second.coordinates)

    def test_tsne_entropies_match_perplexity(self, cluster: ClusterService):
        """Prueba que la busqueda de anchos de banda alcanza ln(perplejidad)."""
        # Arrange
        data = np.random.default_rng(2).normal(size=(30, 5))

        # Act
        layout = cluster.tsne(data, perplexity=5.0, iterations=50)

        # Assert
        assert np.allclose(layout.entropies, np.log(5.0), atol=1e-4)

    def test_tsne_separates_blobs(self, cluster: ClusterService):
        """Prueba que tres nubes separadas siguen separadas en el plano."""
        # Arrange
        rng = np.random.default_rng(3)
        centres = np.repeat(np.eye(3) * 20.0, 15, axis=0)
        data = np.hstack([centres, np.zeros((45, 2))]) + rng.normal(size=(45, 5))
        truth = np.repeat([0, 1, 2], 15)

        # Act
        layout = cluster.tsne(data, perplexity=5.0, iterations=500)

        # Assert
        found = KMeans(n_clusters=3, n_init=10, random_state=0).fit_predict(layout.coordinates)
        assert adjusted_rand_score(truth, found) >= 0.9
        assert layout.kl_divergence <= layout.history[0]

    def test_tsne_infeasible_perplexity(self, cluster: ClusterService):
        """Prueba el error cuando la perplejidad no cabe en el numero de puntos."""
        # Arrange
        data = np.random.default_rng(4).normal(size=(10, 3))

        # Act / Assert
        with pytest.raises(ClusterServiceError, match="menor que 3.00"):
            cluster.tsne(data, perplexity=3.0)

    def test_tables(self, cluster: ClusterService):
        """Prueba las tablas de nodos y aristas."""
        # Arrange
        graph = ConsensusGraph(nodes=["a", "b"], weights=np.array([[0.0, 0.5], [0.5, 0.0]]))
        layout = cluster.layout_fr(graph, iterations=10)

        # Act
        nodes = cluster.node_table(graph.nodes, layout, ["A", "B"])
        edges = cluster.edge_table(graph)

        # Assert
        assert [row[0] for row in nodes] == ["a", "b"]
        assert [row[3] for row in nodes] == ["A", "B"]
        assert edges == [("a", "b", 0.5)]

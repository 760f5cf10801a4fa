import logging
from collections import Counter

import numpy as np
import pytest

from src.models.poem import PoemId
from src.services.lexsem_service import LexsemService, LexsemServiceError
from tests.utils import SAPPHO_LINES, poem_lines


class TestLexsem:
    """Pruebas de n-gramas, TF-IDF y reduccion SVD."""

    @pytest.fixture
    def lexsem(self) -> LexsemService:
        return LexsemService(seed=7)

    def test_count_trigrams(self, lexsem: LexsemService):
        """Prueba que "habet" produce hab, abe y bet."""
        # Act
        counts = lexsem.count_ngrams("habet", (3,))

        # Assert
        assert counts == Counter({"hab": 1, "abe": 1, "bet": 1})

    def test_count_overlapping(self, lexsem: LexsemService):
        """Prueba el conteo de n-gramas solapados."""
        # Act
        counts = lexsem.count_ngrams("abab", (2,))

        # Assert
        assert counts == Counter({"ab": 2, "ba": 1})

    def test_ngrams_do_not_cross_lines(self, lexsem: LexsemService):
        """Prueba que ninguna ventana cruza el salto de linea."""
        # Act
        counts = lexsem.count_ngrams("ab\ncd", (2, 3))

        # Assert
        assert counts == Counter({"ab": 1, "cd": 1})

    def test_idf(self, lexsem: LexsemService):
        """Prueba idf = ln((1 + N) / (1 + df)) + 1 con dos documentos."""
        # Arrange
        counts = [Counter({"aa": 1, "bb": 1}), Counter({"aa": 1})]

        # Act
        matrix, names, idf = lexsem.tfidf(counts)

        # Assert
        assert names == ["aa", "bb"]
        assert idf[0] == pytest.approx(1.0)
        assert idf[1] == pytest.approx(np.log(3 / 2) + 1)
        assert np.allclose(np.linalg.norm(matrix.toarray(), axis=1), 1.0)

    def test_tfidf_empty_corpus(self, lexsem: LexsemService):
        """Prueba el error con un corpus vacio."""
        # Act / Assert
        with pytest.raises(LexsemServiceError):
            lexsem.tfidf([])

    def test_build_vocabulary_min_df(self, lexsem: LexsemService):
        """Prueba que el vocabulario respeta la frecuencia documental minima."""
        # Arrange
        counts = [Counter({"aa": 2, "bb": 1}), Counter({"aa": 1, "cc": 1})]

        # Act
        vocabulary = lexsem.build_vocabulary(counts, min_df=2)

        # Assert
        assert vocabulary == ["aa"]

    def test_reduce_svd_diagonal(self, lexsem: LexsemService):
        """Prueba la SVD de una matriz diagonal."""
        # Arrange
        matrix = np.diag([3.0, 2.0, 1.0])

        # Act
        values, components, singular = lexsem.reduce_svd(matrix, d=2)

        # Assert
        assert np.allclose(singular, [3.0, 2.0])
        assert np.allclose(np.abs(values), [[3.0, 0.0], [0.0, 2.0], [0.0, 0.0]])
        assert np.allclose(components @ components.T, np.eye(2))

    def test_reduce_svd_rank_warning(self, lexsem: LexsemService, caplog):
        """Prueba que d se recorta al rango con un aviso."""
        # Arrange
        caplog.set_level(logging.WARNING)
        matrix = np.outer([1.0, 2.0, 3.0], [1.0, 0.0, 1.0, 0.0])

        # Act
        values, components, singular = lexsem.reduce_svd(matrix, d=3)

        # Assert
        assert values.shape == (3, 1)
        assert components.shape == (1, 4)
        assert "supera el rango" in caplog.text

    def test_reduce_svd_null_matrix(self, lexsem: LexsemService):
        """Prueba el error con una matriz nula."""
        # Act / Assert
        with pytest.raises(LexsemServiceError):
            lexsem.reduce_svd(np.zeros((3, 3)), d=2)

    def test_lsa_and_projection(self, lexsem: LexsemService):
        """Prueba que proyectar los poemas de entrenamiento reproduce sus coordenadas."""
        # Arrange
        texts = ["\n".join(poem_lines(work, n)) for work in ("Amores", "Heroides", "Ex Ponto") for n in range(2)]
        ids = [PoemId("Ovid", "Obra", f"P. {n}") for n in range(len(texts))]

        # Act
        lsa = lexsem.lsa(texts, ids, d=3)
        projected = lexsem.project(lsa.model, texts)

        # Assert
        assert lsa.shape == (6, 3)
        assert lsa.ids == ids
        assert np.allclose(projected, lsa.values)

    def test_lsa_is_reproducible(self, lexsem: LexsemService):
        """Prueba que la misma entrada y semilla dan la misma matriz."""
        # Arrange
        texts = ["\n".join(SAPPHO_LINES[:2]), "\n".join(SAPPHO_LINES[2:]), "\n".join(SAPPHO_LINES)]
        ids = [PoemId("Ovid", "Heroides", f"Ep. {n}") for n in range(3)]

        # Act
        first = lexsem.lsa(texts, ids, d=2)
        second = LexsemService(seed=7).lsa(texts, ids, d=2)

        # Assert
        assert np.array_equal(first.values, second.values)

    def test_lsa_without_shared_ngrams(self, lexsem: LexsemService):
        """Prueba el error cuando ningun n-grama alcanza la frecuencia minima."""
        # Arrange
        ids = [PoemId("a", "b", "1"), PoemId("a", "b", "2")]

        # Act / Assert
        with pytest.raises(LexsemServiceError):
            lexsem.lsa(["abc", "xyz"], ids, d=2)

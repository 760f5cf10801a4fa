import logging
from collections import Counter

import numpy as np
import scipy.linalg
from scipy import sparse
from sklearn.feature_extraction import DictVectorizer
from sklearn.feature_extraction.text import TfidfTransformer
from sklearn.preprocessing import normalize
from sklearn.utils.extmath import randomized_svd, svd_flip

from src.models.features import LsaMatrix, LsaModel, NgramCounts
from src.models.poem import PoemId

logger = logging.getLogger(__name__)

NGRAM_SIZES = (2, 3, 4)
# por encima de este numero de celdas se usa la SVD aleatorizada
DENSE_SVD_LIMIT = 20_000_000


class LexsemServiceError(Exception):
    pass


class LexsemService:
    def __init__(self, seed: int = 0):
        self.seed = seed

    def count_ngrams(self, text: str, sizes=NGRAM_SIZES) -> NgramCounts:
        """n-gramas de caracteres por verso; ninguna ventana cruza un salto de linea."""
        counts: NgramCounts = Counter()
        for line in text.splitlines():
            for n in sizes:
                counts.update(line[i:i + n] for i in range(len(line) - n + 1))
        return counts

    def build_vocabulary(self, counts: list[NgramCounts], min_df: int = 1) -> list[str]:
        document_frequency: Counter = Counter()
        for poem_counts in counts:
            document_frequency.update(poem_counts.keys())
        return sorted(gram for gram, df in document_frequency.items() if df >= min_df)

    def tfidf(self, counts: list[NgramCounts], vocabulary: list[str] | None = None):
        """(matriz dispersa L2, vocabulario, idf); idf = ln((1 + N) / (1 + df)) + 1."""
        if not counts:
            raise LexsemServiceError("Corpus vacio: no hay documentos para TF-IDF")

        vectorizer = DictVectorizer(sort=True)
        if vocabulary is None:
            raw = vectorizer.fit_transform(counts)
        else:
            vectorizer.fit([{gram: 1 for gram in vocabulary}])
            raw = vectorizer.transform(counts)
        names = vectorizer.get_feature_names_out().tolist()
        if not names:
            raise LexsemServiceError("Vocabulario vacio")

        transformer = TfidfTransformer(norm="l2", smooth_idf=True, sublinear_tf=False)
        weighted = transformer.fit_transform(raw)
        return weighted, names, transformer.idf_

    def reduce_svd(self, matrix, d: int = 50, seed: int | None = None):
        """(U_d * S_d, base d x V, valores singulares). d se recorta al rango con aviso."""
        if d < 1:
            raise LexsemServiceError("d debe ser al menos 1")
        seed = self.seed if seed is None else seed
        rows, cols = matrix.shape

        if rows * cols <= DENSE_SVD_LIMIT:
            dense = matrix.toarray() if sparse.issparse(matrix) else np.asarray(matrix, dtype=float)
            u, s, vt = scipy.linalg.svd(dense, full_matrices=False)
            u, vt = svd_flip(u, vt)
        else:
            u, s, vt = randomized_svd(matrix, n_components=min(d, rows, cols), random_state=seed)

        tolerance = s.max(initial=0.0) * max(rows, cols) * np.finfo(float).eps
        rank = int(np.sum(s > tolerance))
        if rank == 0:
            raise LexsemServiceError("La matriz es nula: no hay componentes")
        if d > rank:
            logger.warning("d=%d supera el rango %d; se reduce a %d", d, rank, rank)
            d = rank
        return u[:, :d] * s[:d], vt[:d], s[:d]

    def lsa(self, texts: list[str], ids: list[PoemId], d: int = 50, sizes=NGRAM_SIZES,
            min_df: int = 2, seed: int | None = None) -> LsaMatrix:
        counts = [self.count_ngrams(text, sizes) for text in texts]
        vocabulary = self.build_vocabulary(counts, min_df=min_df)
        if not vocabulary:
            raise LexsemServiceError(f"Ningun n-grama aparece en {min_df} o mas poemas")
        weighted, names, idf = self.tfidf(counts, vocabulary)
        logger.info("LSA: %d poemas, %d n-gramas", len(texts), len(names))

        values, components, singular_values = self.reduce_svd(weighted, d, seed)
        model = LsaModel(vocabulary=names, idf=idf, components=components,
                         singular_values=singular_values, sizes=tuple(sizes))
        return LsaMatrix(ids=list(ids), values=values, model=model)

    def project(self, model: LsaModel, texts: list[str]) -> np.ndarray:
        """Proyecta poemas nuevos sobre la base guardada; los n-gramas desconocidos se ignoran."""
        index = {gram: i for i, gram in enumerate(model.vocabulary)}
        raw = np.zeros((len(texts), len(model.vocabulary)))
        for row, text in enumerate(texts):
            for gram, count in self.count_ngrams(text, model.sizes).items():
                if gram in index:
                    raw[row, index[gram]] = count
        weighted = normalize(raw * model.idf, norm="l2")
        return weighted @ model.components.T

import logging
from pathlib import Path

from src.models.poem import Corpus, PoemId, WorkSummary
from src.repositories.corpus_repository import CorpusError, CorpusRepository

logger = logging.getLogger(__name__)

HEROIDES = "Heroides"
DISPUTED_LETTER = 15
SINGLE_HEROIDES = "Single Heroides"
DOUBLE_HEROIDES = "Double Heroides"
ES = "ES"


class CorpusServiceError(Exception):
    pass


class CorpusService:
    def __init__(self, repository: CorpusRepository | None = None):
        self.repository = repository or CorpusRepository()

    def load_corpus(self, manifest_path: str | Path) -> Corpus:
        """Lee el manifiesto y todos sus poemas; un manifiesto sin filas da un corpus vacio."""
        try:
            manifest = self.repository.read_manifest(manifest_path)
            poems = [self.repository.read_poem(path, poem_id) for path, poem_id in manifest.entries]
        except CorpusError as e:
            raise CorpusServiceError(str(e))

        seen = set()
        for poem in poems:
            if poem.id in seen:
                raise CorpusServiceError(f"Poema repetido en el manifiesto: {poem.id.index}")
            seen.add(poem.id)

        return Corpus(poems=poems)

    def filter_by_length(self, corpus: Corpus, min_lines: int) -> tuple[Corpus, list[PoemId]]:
        """Conserva los poemas con al menos `min_lines` versos y devuelve los ids descartados."""
        kept, removed = [], []
        for poem in corpus:
            (kept if poem.line_count >= min_lines else removed).append(poem)
        if removed:
            logger.info("Se descartan %d poemas con menos de %d versos: %s", len(removed), min_lines,
                        ", ".join(str(poem.id) for poem in removed))
        return Corpus(poems=kept), [poem.id for poem in removed]

    def summary(self, corpus: Corpus) -> tuple[list[WorkSummary], int]:
        return corpus.summary, corpus.total_lines

    @staticmethod
    def letter_number(poem_id: PoemId) -> int | None:
        return poem_id.number

    @staticmethod
    def group_of(poem_id: PoemId) -> str:
        """Heroides en simples (1-14), ES (15) y dobles (16-21); el resto conserva su obra."""
        if poem_id.work != HEROIDES or poem_id.number is None:
            return poem_id.work
        if poem_id.number == DISPUTED_LETTER:
            return ES
        return SINGLE_HEROIDES if poem_id.number < DISPUTED_LETTER else DOUBLE_HEROIDES

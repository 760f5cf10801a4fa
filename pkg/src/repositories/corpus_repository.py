import csv
import logging
import re
import unicodedata
from pathlib import Path

from src.models.poem import CorpusManifest, Poem, PoemId

logger = logging.getLogger(__name__)

MANIFEST_COLUMNS = ("path", "author", "work", "index")

# todo lo que no sea letra ni espacio: puntuacion, corchetes, cruces, digitos
_STRIP = re.compile(r"[^\w\s]|[\d_]")


class CorpusError(Exception):
    pass


def normalize_line(line: str) -> str:
    """Minusculas, sin puntuacion ni corchetes ni diacriticos. u/v e i/j se conservan."""
    decomposed = unicodedata.normalize("NFKD", line)
    text = "".join(ch for ch in decomposed if not unicodedata.combining(ch))
    text = _STRIP.sub(" ", text.lower())
    return " ".join(text.split())


class CorpusRepository:
    def __init__(self, encoding: str = "utf-8"):
        self.encoding = encoding

    def read_manifest(self, manifest_path: str | Path, min_lines: int = 20) -> CorpusManifest:
        manifest_path = Path(manifest_path)
        if not manifest_path.is_file():
            raise CorpusError(f"No existe el manifiesto {manifest_path}")

        entries = []
        with manifest_path.open(encoding=self.encoding, newline="") as file:
            rows = [row for row in file if row.strip() and not row.lstrip().startswith("#")]
        reader = csv.DictReader(rows, delimiter="\t")
        if reader.fieldnames is None or tuple(reader.fieldnames) != MANIFEST_COLUMNS:
            raise CorpusError(
                f"Cabecera invalida en {manifest_path}: se esperaba {' '.join(MANIFEST_COLUMNS)}")

        for number, row in enumerate(reader, start=2):
            try:
                poem_id = PoemId(row["author"].strip(), row["work"].strip(), row["index"].strip())
            except (ValueError, AttributeError):
                raise CorpusError(f"Fila {number} incompleta en {manifest_path}")
            path = Path(row["path"].strip())
            if not path.is_absolute():
                path = manifest_path.parent / path
            entries.append((path, poem_id))

        return CorpusManifest(entries=entries, filter_min_lines=min_lines)

    def read_poem(self, path: Path, poem_id: PoemId) -> Poem:
        if not path.is_file():
            raise CorpusError(f"No existe el archivo {path}")
        try:
            raw = path.read_text(encoding=self.encoding)
        except UnicodeDecodeError as err:
            raise CorpusError(f"{path} no es UTF-8 valido: {err}")

        lines = [normalize_line(line) for line in raw.splitlines()]
        lines = [line for line in lines if line]
        if not lines:
            raise CorpusError(f"{path} no contiene versos")
        if len(lines) % 2:
            logger.warning("%s tiene un numero impar de versos (%d)", poem_id.index, len(lines))
        return Poem(id=poem_id, lines=lines, path=path)

    def read_lines(self, path: str | Path) -> list[str]:
        """Versos normalizados de un archivo suelto (fuera del manifiesto)."""
        path = Path(path)
        try:
            raw = path.read_text(encoding=self.encoding)
        except FileNotFoundError:
            raise CorpusError(f"No existe el archivo {path}")
        except UnicodeDecodeError as err:
            raise CorpusError(f"{path} no es UTF-8 valido: {err}")
        return [line for line in (normalize_line(text) for text in raw.splitlines()) if line]

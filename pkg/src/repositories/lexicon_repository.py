from pathlib import Path

from src.models.phonetics import Weight

RHYME_TIERS = ("identical", "vowels", "nucleus")
DEFAULT_RHYME_WEIGHTS = {"identical": 1.0, "vowels": 0.5, "nucleus": 0.25}


class LexiconError(Exception):
    pass


class LexiconRepository:
    """Archivos opcionales: lexico de cantidades y pesos de rima."""

    def load_macrons(self, path: str | Path | None) -> dict[str, tuple[Weight, ...]]:
        if path is None:
            return {}
        path = Path(path)
        if not path.is_file():
            raise LexiconError(f"No existe el lexico {path}")

        lexicon = {}
        for number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
            if not line.strip() or line.startswith("#"):
                continue
            try:
                word, pattern = line.split("\t")
                weights = tuple(Weight(letter) for letter in pattern.strip().upper())
            except ValueError:
                raise LexiconError(f"{path}:{number}: se esperaba 'palabra<TAB>patron' con H/L/A")
            if not weights:
                raise LexiconError(f"{path}:{number}: patron vacio")
            lexicon[word.strip().lower()] = weights
        return lexicon

    def load_rhyme_weights(self, path: str | Path | None) -> dict[str, float]:
        weights = dict(DEFAULT_RHYME_WEIGHTS)
        if path is None:
            return weights
        path = Path(path)
        if not path.is_file():
            raise LexiconError(f"No existe el archivo de pesos {path}")

        for number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
            if not line.strip() or line.startswith("#"):
                continue
            try:
                tier, value = line.split("\t")
                value = float(value)
            except ValueError:
                raise LexiconError(f"{path}:{number}: se esperaba 'nivel<TAB>peso'")
            if tier not in RHYME_TIERS or not 0.0 <= value <= 1.0:
                raise LexiconError(f"{path}:{number}: nivel o peso invalido")
            weights[tier] = value
        return weights

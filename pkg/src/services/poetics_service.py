import logging

import numpy as np

from src.models.features import POETIC_FEATURE_NAMES, PoeticFeatureVector, RhymeKind, RhymeScore
from src.models.phonetics import PhoneticWord
from src.models.poem import Poem, PoemId
from src.models.scansion import CaesuraKind, FootType, Meter, ScannedCouplet, ScannedLine
from src.repositories.lexicon_repository import DEFAULT_RHYME_WEIGHTS
from src.services.phonology_service import is_vowel
from src.services.scansion_service import ScansionService

logger = logging.getLogger(__name__)

LEONINE_MIN_STRENGTH = 0.5
MAIN_CAESURA_FEET = (3, 4, 2)


class PoeticsServiceError(Exception):
    pass


class PoeticsService:
    def __init__(self, scansion: ScansionService | None = None, rhyme_weights: dict[str, float] | None = None):
        self.scansion = scansion or ScansionService()
        self.rhyme_weights = dict(DEFAULT_RHYME_WEIGHTS)
        self.rhyme_weights.update(rhyme_weights or {})

    # --- rima ------------------------------------------------------------

    @staticmethod
    def _tail(word: PhoneticWord, stress: int | None) -> tuple[str, ...]:
        """Fonemas desde la vocal acentuada hasta el final de la palabra."""
        if stress is None or word.degenerate or stress >= word.syllable_count:
            return ()
        syllables = word.syllables[stress:]
        head = syllables[0].nucleus + syllables[0].coda
        return head + tuple(p for s in syllables[1:] for p in s.phonemes)

    def rhyme_score(self, word_a: PhoneticWord, word_b: PhoneticWord,
                    stress_a: int | None = None, stress_b: int | None = None) -> float:
        tail_a = self._tail(word_a, word_a.stress_index if stress_a is None else stress_a)
        tail_b = self._tail(word_b, word_b.stress_index if stress_b is None else stress_b)
        if not tail_a or not tail_b:
            return 0.0
        if tail_a == tail_b:
            return self.rhyme_weights["identical"]
        if [p for p in tail_a if is_vowel(p)] == [p for p in tail_b if is_vowel(p)]:
            return self.rhyme_weights["vowels"]
        if word_a.syllables[-1].nucleus == word_b.syllables[-1].nucleus:
            return self.rhyme_weights["nucleus"]
        return 0.0

    def _word_at(self, line: ScannedLine, position: int) -> tuple[PhoneticWord, int | None]:
        owner = line.syllables[position].word_index
        return line.line.words[owner], line.word_stress[owner]

    def _final_word(self, line: ScannedLine):
        if not line.syllables:
            return None
        return self._word_at(line, len(line.syllables) - 1)

    def _caesura_word(self, line: ScannedLine):
        """Palabra ante la cesura principal; None si el verso no tiene."""
        if line.unscannable:
            return None
        if line.meter is Meter.PENTAMETER:
            return self._word_at(line, line.ictus_positions[4])
        for foot in MAIN_CAESURA_FEET:
            if line.caesura_in(foot, CaesuraKind.STRONG):
                return self._word_at(line, line.ictus_positions[foot - 1])
        return None

    def _score(self, first, second, kind: RhymeKind) -> RhymeScore:
        if first is None or second is None:
            return RhymeScore(0.0, kind)
        (word_a, stress_a), (word_b, stress_b) = first, second
        return RhymeScore(self.rhyme_score(word_a, word_b, stress_a, stress_b), kind)

    def poem_rhyme_features(self, couplets: list[ScannedCouplet]) -> tuple[float, float]:
        """
        RS y LEO sobre los versos escandidos del poema, en orden
        Cada final de verso se compara con el final del verso escandido anterior,
        cruzando los limites del distico; la palabra de la cesura principal se
        compara con la final del mismo verso. Los versos sin escansion no cuentan.
        """
        lines = [line for couplet in couplets for line in (couplet.hexameter, couplet.pentameter)
                 if not line.unscannable]
        if not lines:
            raise PoeticsServiceError("Sin versos escandidos para medir la rima")
        strengths, leonine = 0.0, 0
        previous = None
        for line in lines:
            final = self._final_word(line)
            if previous is not None:
                strengths += self._score(previous, final, RhymeKind.VERTICAL).strength
            horizontal = self._score(self._caesura_word(line), final, RhymeKind.LEONINE)
            strengths += horizontal.strength
            leonine += horizontal.strength >= LEONINE_MIN_STRENGTH
            previous = final
        return strengths / len(lines), leonine / len(lines)

    # --- vector de rasgos ---------------------------------------------------------

    def extract_features(self, couplets: list[ScannedCouplet], poem: PoemId | None = None,
                         line_count: int | None = None, trailing: ScannedLine | None = None) -> PoeticFeatureVector:
        name = str(poem) if poem else "poema"
        hexameters = [c.hexameter for c in couplets if not c.hexameter.unscannable]
        pentameters = [c.pentameter for c in couplets if not c.pentameter.unscannable]
        if not hexameters or not pentameters:
            raise PoeticsServiceError(f"{name}: ningun distico escandible")

        values: dict[str, float] = {}

        hex_conflicts = [self.scansion.detect_ictus_conflicts(line) for line in hexameters]
        for n in range(1, 5):
            values[f"H{n}SP"] = np.mean([line.feet[n - 1] is FootType.SPONDEE for line in hexameters])
        for n in range(1, 7):
            values[f"H{n}CF"] = np.mean([conflicts[n - 1] for conflicts in hex_conflicts])
        for n in range(1, 6):
            values[f"H{n}DI"] = np.mean([n in line.diaereses for line in hexameters])
            values[f"H{n}SC"] = np.mean([line.caesura_in(n, CaesuraKind.STRONG) for line in hexameters])
            values[f"H{n}WC"] = np.mean([line.caesura_in(n, CaesuraKind.WEAK) for line in hexameters])

        pent_conflicts = [self.scansion.detect_ictus_conflicts(line) for line in pentameters]
        for n in range(1, 3):
            values[f"P{n}SP"] = np.mean([line.feet[n - 1] is FootType.SPONDEE for line in pentameters])
            values[f"P{n}SC"] = np.mean([line.caesura_in(n, CaesuraKind.STRONG) for line in pentameters])
        for n in range(1, 5):
            values[f"P{n}CF"] = np.mean([conflicts[n - 1] for conflicts in pent_conflicts])
            values[f"P{n}WC"] = np.mean([line.caesura_in(n, CaesuraKind.WEAK) for line in pentameters])
        values["P1DI"] = np.mean([1 in line.diaereses for line in pentameters])

        scannable = hexameters + pentameters
        if trailing is not None and not trailing.unscannable:
            scannable.append(trailing)
        values["ELC"] = sum(line.elision_count for line in scannable) / len(scannable)
        values["LEN"] = line_count if line_count is not None else 2 * len(couplets) + (trailing is not None)
        values["RS"], values["LEO"] = self.poem_rhyme_features(couplets)
        values["PFSD"] = np.std([self.scansion.pentameter_final_word_length(line) for line in pentameters])

        return PoeticFeatureVector(poem=poem, values={k: float(v) for k, v in values.items()})

    def poem_features(self, poem: Poem) -> PoeticFeatureVector:
        couplets, trailing, _ = self.scansion.scan_poem(poem)
        return self.extract_features(couplets, poem.id, poem.line_count, trailing)

    def feature_matrix(self, poems: list[Poem]) -> tuple[np.ndarray, list[PoemId], list[tuple[PoemId, str]]]:
        """Matriz poemas x 43; los poemas que fallan se informan y se omiten."""
        rows, ids, failures = [], [], []
        for poem in poems:
            try:
                vector = self.poem_features(poem)
            except PoeticsServiceError as e:
                logger.warning("Se omite %s: %s", poem.id, e)
                failures.append((poem.id, str(e)))
                continue
            rows.append(vector.as_array())
            ids.append(poem.id)
        matrix = np.vstack(rows) if rows else np.empty((0, len(POETIC_FEATURE_NAMES)))
        return matrix, ids, failures

    @staticmethod
    def z_scale(matrix: np.ndarray) -> np.ndarray:
        matrix = np.asarray(matrix, dtype=float)
        mean = matrix.mean(axis=0)
        std = matrix.std(axis=0)
        safe = np.where(std > 0, std, 1.0)
        return np.where(std > 0, (matrix - mean) / safe, 0.0)

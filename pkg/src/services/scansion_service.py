import logging

from src.models.phonetics import PhoneticLine, Weight
from src.models.poem import Poem
from src.models.scansion import (
    CaesuraKind, FootType, Meter, MetricalSyllable, ScanDiagnostics, ScannedCouplet, ScannedLine,
)
from src.services.phonology_service import (
    PhonologyError, PhonologyService, STOPS, LIQUIDS, is_closed, is_vowel, split_syllables,
)

logger = logging.getLogger(__name__)

# L: no breve, S: no larga, X: cualquiera
FOOT_SLOTS = {FootType.DACTYL: "LSS", FootType.SPONDEE: "LL"}
HEXAMETER_CLOSE = "LX"
PENTAMETER_SECOND_HALF = "L" + "LSS" * 2 + "X"
SYLLABLE_RANGE = {Meter.HEXAMETER: (12, 17), Meter.PENTAMETER: (12, 14)}
ENCLITIC = "kwe"


class ScansionError(Exception):
    pass


def _fits(weight: Weight, slot: str) -> bool:
    if slot == "L":
        return weight is not Weight.LIGHT
    if slot == "S":
        return weight is not Weight.HEAVY
    return True


class ScansionService:
    def __init__(self, phonology: PhonologyService | None = None):
        self.phonology = phonology or PhonologyService()

    # --- silabas del verso ------------------------------------------------

    def _stream(self, line: PhoneticLine, elide: bool) -> list[tuple[str, int]]:
        """Fonemas del verso con la palabra a la que pertenecen; el clitico prodelido se une a su base."""
        stream = []
        host = 0
        for i, word in enumerate(line.words):
            phonemes = list(word.phonemes)
            owner = i
            if i - 1 in line.prodelisions:
                owner = host
                if phonemes[:1] == ["e"]:
                    phonemes = phonemes[1:]
            else:
                host = i
            if elide and i in line.elisions:
                if phonemes[-1:] == ["m"]:
                    phonemes.pop()
                phonemes.pop()
            stream.extend((phoneme, owner) for phoneme in phonemes)
        return stream

    def _line_syllables(self, line: PhoneticLine, stream) -> list[tuple[str, int, Weight]]:
        phonemes = [p for p, _ in stream]
        parts = split_syllables(phonemes)

        spans = []
        start = 0
        for onset, nucleus, coda in parts:
            nucleus_at = start + len(onset)
            end = nucleus_at + 1 + len(coda)
            spans.append((start, nucleus_at, end))
            start = end

        # numero de silaba dentro de su palabra
        seen: dict[int, int] = {}
        result = []
        for k, ((start, nucleus_at, end), (onset, nucleus, coda)) in enumerate(zip(spans, parts)):
            owner = stream[nucleus_at][1]
            word = line.words[owner]
            word_k = seen.get(owner, 0)
            seen[owner] = word_k + 1

            following = spans[k + 1] if k + 1 < len(spans) else None
            next_onset = stream[following[0]:following[1]] if following else []
            weight = self._position_weight(word, word_k, coda, next_onset)
            result.append(("".join(phonemes[start:end]), owner, weight))
        return result

    def _position_weight(self, word, word_k, coda, next_onset) -> Weight:
        quantity = Weight.ANCEPS
        if word_k < word.syllable_count:
            quantity = self.phonology.vowel_quantity(word.text, word.syllables, word_k)
        consonants = [p for p, _ in next_onset]

        if quantity is Weight.HEAVY or is_closed(coda):
            return Weight.HEAVY
        if consonants[:1] == ["z"]:
            return Weight.HEAVY
        if (quantity is not Weight.LIGHT and word.syllable_count == 1 and not word.degenerate
                and is_vowel(word.phonemes[-1])):
            return Weight.HEAVY
        if len(consonants) == 2 and consonants[0] in STOPS and consonants[1] in LIQUIDS:
            # muta cum liquida: anceps dentro de una palabra, cierra entre palabras
            if next_onset[0][1] == next_onset[1][1]:
                return Weight.ANCEPS
            return Weight.HEAVY
        if quantity is Weight.LIGHT:
            return Weight.LIGHT
        if word.text.endswith(ENCLITIC) and word.syllable_count > 1 and word_k == word.syllable_count - 1:
            return Weight.LIGHT
        return Weight.ANCEPS

    # --- analisis ---------------------------------------------------------------

    def _parses(self, weights: list[Weight], meter: Meter, word_end):
        """Esquemas compatibles en orden dactilo-primero: (pies, inicio de cada pie/semipie, posiciones)."""
        total = len(weights)

        def fits(pos, slots):
            return pos + len(slots) <= total and all(
                _fits(w, s) for w, s in zip(weights[pos:pos + len(slots)], slots))

        def search(pos, feet, starts, slots):
            if meter is Meter.HEXAMETER and len(feet) == 5:
                if total - pos == 2 and fits(pos, HEXAMETER_CLOSE):
                    yield feet + (FootType.SPONDEE,), starts + (pos,), slots + HEXAMETER_CLOSE
                return
            if meter is Meter.PENTAMETER and len(feet) == 2:
                tail = PENTAMETER_SECOND_HALF
                if total - pos == len(tail) and word_end(pos) and fits(pos, tail):
                    yield (feet + (FootType.DACTYL, FootType.DACTYL),
                           starts + (pos + 1, pos + 4, pos, pos + 7), slots + tail)
                return
            for foot in (FootType.DACTYL, FootType.SPONDEE):
                foot_slots = FOOT_SLOTS[foot]
                if fits(pos, foot_slots):
                    yield from search(pos + len(foot_slots), feet + (foot,), starts + (pos,),
                                      slots + foot_slots)

        low, high = SYLLABLE_RANGE[meter]
        if not low <= total <= high:
            return iter(())
        return search(0, (), (), "")

    def scan_line(self, line: PhoneticLine | str, meter: Meter) -> ScannedLine:
        if isinstance(line, str):
            line = self.phonology.phonetic_line(line)

        scanned = self._scan(line, meter, elide=True)
        if scanned is None and line.elisions:
            scanned = self._scan(line, meter, elide=False)
        if scanned is None:
            logger.debug("Verso no escandible como %s: %s", meter.value, line.text)
            syllables = self._line_syllables(line, self._stream(line, elide=True))
            return ScannedLine(
                meter=meter,
                line=line,
                syllables=tuple(MetricalSyllable(t, w, weight.value) for t, w, weight in syllables),
                elision_count=len(line.elisions),
                prodelision_count=len(line.prodelisions),
                final_word_syllables=self._final_word_length(syllables),
                unscannable=True,
                word_stress=tuple(word.stress_index for word in line.words),
            )
        return scanned

    def _scan(self, line: PhoneticLine, meter: Meter, elide: bool) -> ScannedLine | None:
        syllables = self._line_syllables(line, self._stream(line, elide))
        owners = [owner for _, owner, _ in syllables]

        def word_end(position):
            return position >= len(owners) - 1 or owners[position] != owners[position + 1]

        parses = self._parses([weight for _, _, weight in syllables], meter, word_end)
        first = next(parses, None)
        if first is None:
            return None
        ambiguous = next(parses, None) is not None
        feet, starts, slots = first
        resolved = tuple(slot != "S" for slot in slots)

        syllable_to_foot = [0] * len(syllables)
        for n, foot in enumerate(feet):
            width = 2 if (meter is Meter.HEXAMETER and n == 5) else len(FOOT_SLOTS[foot])
            for position in range(starts[n], starts[n] + width):
                syllable_to_foot[position] = n + 1

        caesurae, diaereses = [], []
        full_feet = 5 if meter is Meter.HEXAMETER else 4
        for n in range(full_feet):
            start = starts[n]
            if word_end(start):
                caesurae.append((n + 1, CaesuraKind.STRONG))
            elif feet[n] is FootType.DACTYL and word_end(start + 1):
                caesurae.append((n + 1, CaesuraKind.WEAK))
        last_diaeresis = 5 if meter is Meter.HEXAMETER else 3
        for n in range(last_diaeresis):
            end = starts[n] + len(FOOT_SLOTS[feet[n]]) - 1
            if word_end(end):
                diaereses.append(n + 1)

        return ScannedLine(
            meter=meter,
            line=line,
            syllables=tuple(MetricalSyllable(t, w, weight.value) for t, w, weight in syllables),
            feet=feet,
            syllable_to_foot=tuple(syllable_to_foot),
            ictus_positions=starts,
            resolved_long=resolved,
            caesurae=tuple(caesurae),
            diaereses=tuple(diaereses),
            elision_count=len(line.elisions) if elide else 0,
            prodelision_count=len(line.prodelisions),
            final_word_syllables=self._final_word_length(syllables),
            ambiguous=ambiguous,
            hiatus=not elide,
            word_stress=self._resolve_stress(line, owners, resolved),
        )

    def _resolve_stress(self, line: PhoneticLine, owners, resolved) -> tuple[int | None, ...]:
        """Recalcula el acento de las palabras con penultima anceps segun el esquema elegido."""
        stresses = []
        for w, word in enumerate(line.words):
            stress = word.stress_index
            if word.syllable_count >= 3 and word.weights[-2] is Weight.ANCEPS:
                positions = [i for i, owner in enumerate(owners) if owner == w]
                penult = word.syllable_count - 2
                if len(positions) > penult:
                    weight = Weight.HEAVY if resolved[positions[penult]] else Weight.LIGHT
                    stress = self.phonology.assign_stress(word, penult_weight=weight)
            stresses.append(stress)
        return tuple(stresses)

    @staticmethod
    def _final_word_length(syllables) -> int:
        if not syllables:
            return 0
        last = syllables[-1][1]
        return sum(1 for _, owner, _ in syllables if owner == last)

    # --- rasgos del verso -------------------------------------------------------

    def detect_ictus_conflicts(self, scanned: ScannedLine) -> tuple[bool, ...]:
        """Por pie completo: el ictus no cae en la silaba acentuada de su palabra."""
        if scanned.unscannable:
            raise ScansionError("No se pueden medir conflictos en un verso no escandible")
        conflicts = []
        for position in scanned.foot_ictus:
            owner = scanned.syllables[position].word_index
            word = scanned.line.words[owner]
            if word.syllable_count <= 1:
                conflicts.append(False)
                continue
            in_word = scanned.syllables_of_word(owner).index(position)
            conflicts.append(in_word != scanned.word_stress[owner])
        return tuple(conflicts)

    def pentameter_final_word_length(self, scanned: ScannedLine) -> int:
        if scanned.meter is not Meter.PENTAMETER:
            raise ScansionError("La longitud de la palabra final solo se mide en pentametros")
        return scanned.final_word_syllables

    def scan_poem(self, poem: Poem) -> tuple[list[ScannedCouplet], ScannedLine | None, ScanDiagnostics]:
        diagnostics = ScanDiagnostics(poem=str(poem.id), lines=poem.line_count)
        scanned = []
        for number, text in enumerate(poem.lines):
            meter = Meter.HEXAMETER if number % 2 == 0 else Meter.PENTAMETER
            try:
                line = self.scan_line(text, meter)
            except PhonologyError as e:
                logger.warning("%s v. %d: %s", poem.id, number + 1, e)
                line = ScannedLine(meter=meter, line=PhoneticLine(text=text, words=()), unscannable=True)
            diagnostics.unscannable += line.unscannable
            diagnostics.ambiguous += line.ambiguous
            diagnostics.hiatus += line.hiatus
            if line.spondaic_fifth:
                diagnostics.spondaic_fifth += 1
                logger.info("%s v. %d: quinto pie espondaico", poem.id, number + 1)
            scanned.append(line)

        trailing = None
        if len(scanned) % 2:
            trailing = scanned.pop()
            diagnostics.odd_trailing_line = True
        couplets = [ScannedCouplet(scanned[i], scanned[i + 1]) for i in range(0, len(scanned), 2)]

        if diagnostics.unscannable:
            logger.warning("%s: %d de %d versos sin escandir", poem.id, diagnostics.unscannable, poem.line_count)
        return couplets, trailing, diagnostics

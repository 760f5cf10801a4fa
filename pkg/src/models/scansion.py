from dataclasses import dataclass, field
from enum import Enum

from src.models.phonetics import PhoneticLine


class Meter(str, Enum):
    HEXAMETER = "hexameter"
    PENTAMETER = "pentameter"


class FootType(str, Enum):
    DACTYL = "D"
    SPONDEE = "S"


class CaesuraKind(str, Enum):
    STRONG = "strong"
    WEAK = "weak"


@dataclass(frozen=True)
class MetricalSyllable:
    text: str
    word_index: int
    weight: str  # "H" / "L" / "A" antes del analisis; el esquema elegido resuelve

    def __str__(self):
        return self.text


@dataclass(frozen=True)
class ScannedLine:
    meter: Meter
    line: PhoneticLine
    syllables: tuple[MetricalSyllable, ...] = ()
    feet: tuple[FootType, ...] = ()
    # numero de pie (1..6) por silaba; 0 para los semipies del pentametro
    syllable_to_foot: tuple[int, ...] = ()
    # silaba que abre cada pie, en orden; el pentametro agrega sus dos semipies
    ictus_positions: tuple[int, ...] = ()
    # resultado del esquema: True si la posicion es larga
    resolved_long: tuple[bool, ...] = ()
    caesurae: tuple[tuple[int, CaesuraKind], ...] = ()
    diaereses: tuple[int, ...] = ()
    elision_count: int = 0
    prodelision_count: int = 0
    final_word_syllables: int = 0
    ambiguous: bool = False
    unscannable: bool = False
    hiatus: bool = False
    word_stress: tuple[int | None, ...] = field(default=())

    @property
    def pattern(self) -> str:
        return "".join(foot.value for foot in self.feet)

    @property
    def spondaic_fifth(self) -> bool:
        return (self.meter is Meter.HEXAMETER and len(self.feet) == 6
                and self.feet[4] is FootType.SPONDEE)

    @property
    def foot_ictus(self) -> tuple[int, ...]:
        """Silabas iniciales de los pies completos (sin semipies)."""
        count = 6 if self.meter is Meter.HEXAMETER else 4
        return self.ictus_positions[:count]

    def word_end_after(self, position: int) -> bool:
        """Hay fin de palabra despues de la silaba `position`."""
        if position >= len(self.syllables) - 1:
            return True
        return self.syllables[position].word_index != self.syllables[position + 1].word_index

    def syllables_of_word(self, word_index: int) -> list[int]:
        return [i for i, s in enumerate(self.syllables) if s.word_index == word_index]

    def caesura_in(self, foot: int, kind: CaesuraKind | None = None) -> bool:
        return any(n == foot and (kind is None or k is kind) for n, k in self.caesurae)

    def __repr__(self):
        state = "unscannable" if self.unscannable else self.pattern
        return f"<ScannedLine {self.meter.value} {state}>"


@dataclass(frozen=True)
class ScannedCouplet:
    hexameter: ScannedLine
    pentameter: ScannedLine


@dataclass
class ScanDiagnostics:
    poem: str
    lines: int = 0
    unscannable: int = 0
    ambiguous: int = 0
    hiatus: int = 0
    spondaic_fifth: int = 0
    odd_trailing_line: bool = False

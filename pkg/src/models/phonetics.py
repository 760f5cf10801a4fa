from dataclasses import dataclass, field, replace
from enum import Enum


class Weight(str, Enum):
    HEAVY = "H"
    LIGHT = "L"
    ANCEPS = "A"


@dataclass(frozen=True)
class Syllable:
    onset: tuple[str, ...]
    nucleus: tuple[str, ...]
    coda: tuple[str, ...]

    @property
    def phonemes(self) -> tuple[str, ...]:
        return self.onset + self.nucleus + self.coda

    @property
    def text(self) -> str:
        return "".join(self.phonemes)


@dataclass(frozen=True)
class PhoneticWord:
    text: str
    phonemes: tuple[str, ...]
    syllables: tuple[Syllable, ...] = ()
    weights: tuple[Weight, ...] = ()
    stress_index: int | None = None
    degenerate: bool = False

    @property
    def syllable_count(self) -> int:
        return len(self.syllables)

    def with_stress(self, stress_index: int | None) -> "PhoneticWord":
        return replace(self, stress_index=stress_index)

    def __str__(self):
        return ".".join(s.text for s in self.syllables) or self.text


@dataclass(frozen=True)
class PhoneticLine:
    text: str
    words: tuple[PhoneticWord, ...]
    # indices i de frontera: entre words[i] y words[i + 1]
    elisions: tuple[int, ...] = field(default=())
    prodelisions: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if set(self.elisions) & set(self.prodelisions):
            raise ValueError("Elisiones y prodelisiones deben ser disjuntas")
        if any(i >= len(self.words) for i in self.elisions):
            raise ValueError("Indice de elision fuera de rango")

import re
from dataclasses import dataclass, field
from pathlib import Path


@dataclass(frozen=True, order=True)
class PoemId:
    author: str
    work: str
    index: str

    def __post_init__(self):
        if not (self.author and self.work and self.index):
            raise ValueError("PoemId requiere autor, obra e indice no vacios")

    def __str__(self):
        return self.index

    @property
    def number(self) -> int | None:
        """Numero de la carta/poema: "Ep. 15" -> 15, "Am. 2.18" -> 18."""
        found = re.findall(r"\d+", self.index)
        return int(found[-1]) if found else None


class Poem:
    def __init__(self, **kwargs):
        self.id = kwargs.get("id")
        self.lines = list(kwargs.get("lines", []))
        self.path = kwargs.get("path")

    @property
    def line_count(self) -> int:
        return len(self.lines)

    @property
    def is_odd(self) -> bool:
        return self.line_count % 2 == 1

    def __repr__(self):
        return f"<Poem {self.id.index} ({self.line_count} lines)>"


@dataclass
class CorpusManifest:
    entries: list[tuple[Path, PoemId]] = field(default_factory=list)
    filter_min_lines: int = 20


@dataclass(frozen=True)
class WorkSummary:
    author: str
    work: str
    poems: int
    min_length: int
    max_length: int


class Corpus:
    def __init__(self, **kwargs):
        self.poems = list(kwargs.get("poems", []))

    def __len__(self):
        return len(self.poems)

    def __iter__(self):
        return iter(self.poems)

    @property
    def ids(self) -> list[PoemId]:
        return [poem.id for poem in self.poems]

    @property
    def total_lines(self) -> int:
        return sum(poem.line_count for poem in self.poems)

    @property
    def summary(self) -> list[WorkSummary]:
        """Resumen por obra (la tabla del corpus), en orden de aparicion."""
        groups: dict[tuple[str, str], list[int]] = {}
        for poem in self.poems:
            groups.setdefault((poem.id.author, poem.id.work), []).append(poem.line_count)
        return [
            WorkSummary(author, work, len(lengths), min(lengths), max(lengths))
            for (author, work), lengths in groups.items()
        ]

    def __repr__(self):
        return f"<Corpus {len(self.poems)} poems, {self.total_lines} lines>"

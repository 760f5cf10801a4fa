from pathlib import Path

DATA_DIR = Path(__file__).parent / "data"

SAPPHO_LINES = [
    "ecquid ut inspecta est studiosae litera dextrae",
    "protinus est oculis cognita nostra tuis",
    "an nisi legisses auctoris nomina sapphus",
    "hoc breue nescires unde ueniret opus",
]

# Disticos escandidos a mano; todos tienen un analisis valido.
COUPLETS = {
    "Amores": [
        ("arma gravi numero violentaque bella parabam", "edere materia conveniente modis"),
        ("par erat inferior versus risisse cupido", "dicitur atque unum surripuisse pedem"),
    ],
    "Heroides": [
        (SAPPHO_LINES[0], SAPPHO_LINES[1]),
        (SAPPHO_LINES[2], SAPPHO_LINES[3]),
        ("hanc tua penelope lento tibi mittit ulixe", "nil mihi rescribas ut tamen ipse veni"),
    ],
    "Ex Ponto": [
        ("naso tomitanae iam non novus incola terrae", "hoc tibi de getico litore mittit opus"),
        ("parve nec invideo sine me liber ibis in urbem", "ei mihi quod domino non licet ire tuo"),
    ],
}
INDEX_PREFIX = {"Amores": "Am. 1.", "Heroides": "Ep. ", "Ex Ponto": "Pont. 1."}
LETTERS = (1, 5, 16, 18)


def read_oracle() -> list[tuple[str, str, str]]:
    """(metro, verso, patron) del archivo de escansiones hechas a mano."""
    rows = (DATA_DIR / "scansion_oracle.tsv").read_text(encoding="utf-8").splitlines()[1:]
    return [tuple(row.split("\t")) for row in rows if row.strip()]


def poem_lines(work: str, number: int) -> list[str]:
    """Poema sintetico: los disticos de la obra rotados y repetidos segun su numero."""
    bank = COUPLETS[work]
    lines = []
    for i in range(2 + number):
        lines.extend(bank[(number + i) % len(bank)])
    return lines


def write_corpus(root: Path, poems_per_work: int = 4, author: str = "Ovid") -> Path:
    """Escribe un corpus pequeno con manifiesto; devuelve la ruta del manifiesto."""
    root.mkdir(parents=True, exist_ok=True)
    rows = ["path\tauthor\twork\tindex"]
    for work, prefix in INDEX_PREFIX.items():
        for number in range(poems_per_work):
            label = LETTERS[number % len(LETTERS)] if work == "Heroides" else number + 1
            name = f"{work.replace(' ', '_').lower()}_{number}.txt"
            (root / name).write_text("\n".join(poem_lines(work, number)) + "\n", encoding="utf-8")
            rows.append(f"{name}\t{author}\t{work}\t{prefix}{label}")
    manifest = root / "manifest.tsv"
    manifest.write_text("\n".join(rows) + "\n", encoding="utf-8")
    return manifest

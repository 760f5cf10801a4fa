import logging
import re

from src.models.phonetics import PhoneticLine, PhoneticWord, Syllable, Weight

logger = logging.getLogger(__name__)

VOWELS = frozenset("aeiouy")
DIPHTHONGS = frozenset({"ae", "au", "oe"})
# ui / eu / ei solo son diptongos en estas palabras (forma transcrita)
CLOSED_DIPHTHONGS = {
    "kui": "ui", "huik": "ui",
    "seu": "eu", "keu": "eu", "neu": "eu", "heu": "eu",
    "ei": "ei", "hei": "ei", "dein": "ei", "deinde": "ei", "deinkeps": "ei",
}
LABIOVELARS = frozenset({"kw", "gw"})
STOPS = frozenset("pbtdkg")
LIQUIDS = frozenset("lr")
PRODELIDED = frozenset({"est", "es"})
LATIN_CHARACTERS = frozenset("abcdefghijklmnopqrstuvwxyz _")
LATIN_LETTERS = LATIN_CHARACTERS - {" ", "_"}

# Orden fijo: los digrafos antes que las letras sueltas.
TRANSCRIPTION_RULES = (
    ("qu", re.compile(r"qu"), "kw"),
    ("ngu", re.compile(r"ngu(?=[aeiouy])"), "ngw"),
    ("ph", re.compile(r"ph"), "p"),
    ("th", re.compile(r"th"), "t"),
    ("ch", re.compile(r"ch"), "k"),
    ("gn", re.compile(r"gn"), "nj"),
    ("c", re.compile(r"c"), "k"),
    ("x", re.compile(r"x"), "ks"),
    ("v", re.compile(r"v"), "w"),
)


class PhonologyError(Exception):
    pass


def is_vowel(phoneme: str) -> bool:
    return phoneme[0] in VOWELS


def _ends_open(phonemes) -> bool:
    """Termina en vocal o en vocal + m."""
    if not phonemes:
        return False
    if is_vowel(phonemes[-1]):
        return True
    return phonemes[-1] == "m" and len(phonemes) > 1 and is_vowel(phonemes[-2])


def _starts_open(phonemes) -> bool:
    """Empieza por vocal, con o sin h."""
    if not phonemes:
        return False
    if is_vowel(phonemes[0]):
        return True
    return phonemes[0] == "h" and len(phonemes) > 1 and is_vowel(phonemes[1])


def coda_length(cluster) -> int:
    """Cuantas consonantes del grupo intervocalico cierran la silaba anterior. La h no hace posicion."""
    if len([c for c in cluster if c != "h"]) <= 1:
        return 0
    if cluster[-2] in STOPS and cluster[-1] in LIQUIDS:
        return len(cluster) - 2
    return len(cluster) - 1


def split_syllables(phonemes) -> list[tuple[tuple, tuple, tuple]]:
    """Division con ataque maximo: una consonante (o muta cum liquida) pasa a la silaba siguiente."""
    phonemes = tuple(phonemes)
    nuclei = [i for i, p in enumerate(phonemes) if is_vowel(p)]
    syllables = []
    start = 0
    for n, index in enumerate(nuclei):
        if n + 1 < len(nuclei):
            cluster = phonemes[index + 1:nuclei[n + 1]]
            end = index + 1 + coda_length(cluster)
        else:
            end = len(phonemes)
        syllables.append((phonemes[start:index], (phonemes[index],), phonemes[index + 1:end]))
        start = end
    return syllables


def is_closed(coda) -> bool:
    return any(c != "h" for c in coda)


def is_muta_cum_liquida(onset) -> bool:
    return len(onset) == 2 and onset[0] in STOPS and onset[1] in LIQUIDS


class PhonologyService:
    def __init__(self, lexicon: dict[str, tuple[Weight, ...]] | None = None):
        # las claves del lexico se comparan ya transcritas
        self.lexicon = {self.transcribe(word): weights for word, weights in (lexicon or {}).items()}

    # --- transcripcion ---------------------------------------------------

    def transcribe(self, line: str) -> str:
        text = " ".join(line.lower().split())
        if LATIN_LETTERS.isdisjoint(text):
            raise PhonologyError(f"Verso sin letras latinas: {line!r}")
        unknown = sorted(set(text) - LATIN_CHARACTERS)
        if unknown:
            logger.warning("Caracteres no latinos sin transcribir en %r: %s", line, "".join(unknown))

        for _, pattern, replacement in TRANSCRIPTION_RULES:
            text = pattern.sub(replacement, text)
        words = [self._glides(word) for word in text.split(" ") if word]
        return " ".join(self._prodelide(words))

    def _glides(self, word: str) -> str:
        """u/i consonanticas: a comienzo de palabra o tras vocal, y ante vocal."""
        out: list[str] = []
        for i, ch in enumerate(word):
            prev = out[-1] if out else None
            nxt = word[i + 1] if i + 1 < len(word) else None
            after_vowel_or_start = prev is None or prev in VOWELS
            if ch == "i" and nxt in VOWELS and nxt != "i" and after_vowel_or_start:
                out.append("j")
            elif ch == "u" and nxt in VOWELS and after_vowel_or_start:
                out.append("w")
            else:
                out.append(ch)
        return "".join(out)

    def _prodelide(self, words: list[str]) -> list[str]:
        joined: list[str] = []
        for word in words:
            if word in PRODELIDED and joined and _ends_open(joined[-1].replace("_", "")):
                joined[-1] = f"{joined[-1]}_{word[1:]}"
            else:
                joined.append(word)
        return joined

    # --- fonemas y silabas ---------------------------------------------------

    def tokenize(self, text: str) -> tuple[str, ...]:
        text = text.replace("_", "")
        diphthong = CLOSED_DIPHTHONGS.get(text)
        phonemes = []
        i = 0
        while i < len(text):
            pair = text[i:i + 2]
            if pair in DIPHTHONGS or pair == diphthong or pair in LABIOVELARS:
                phonemes.append(pair)
                i += 2
            else:
                phonemes.append(text[i])
                i += 1
        return tuple(phonemes)

    def make_word(self, text: str) -> PhoneticWord:
        return PhoneticWord(text=text, phonemes=self.tokenize(text))

    def syllabify(self, word: PhoneticWord | str) -> PhoneticWord:
        if isinstance(word, str):
            word = self.make_word(word)
        parts = split_syllables(word.phonemes)
        if not parts:
            if not word.text.startswith("_"):
                logger.warning("Palabra sin vocal: %r", word.text)
            syllable = Syllable(onset=word.phonemes, nucleus=(), coda=())
            return PhoneticWord(text=word.text, phonemes=word.phonemes, syllables=(syllable,),
                                weights=(Weight.ANCEPS,), degenerate=True)

        syllables = tuple(Syllable(onset, nucleus, coda) for onset, nucleus, coda in parts)
        weights = []
        for k, syllable in enumerate(syllables):
            following = syllables[k + 1] if k + 1 < len(syllables) else None
            quantity = self.vowel_quantity(word.text, syllables, k)
            if quantity is Weight.HEAVY or is_closed(syllable.coda):
                weights.append(Weight.HEAVY)
            elif following and following.onset[:1] == ("z",):
                weights.append(Weight.HEAVY)
            elif following and is_muta_cum_liquida(following.onset):
                weights.append(Weight.ANCEPS)
            else:
                weights.append(quantity)
        return PhoneticWord(text=word.text, phonemes=word.phonemes, syllables=syllables,
                            weights=tuple(weights))

    def vowel_quantity(self, text: str, syllables, k: int) -> Weight:
        """Cantidad natural de la vocal k: diptongo o lexico; vocal ante vocal es breve."""
        syllable = syllables[k]
        if len(syllable.nucleus[0]) == 2:
            return Weight.HEAVY
        pattern = self.lexicon.get(text.replace("_", ""))
        if pattern is not None:
            if len(pattern) == len(syllables):
                return pattern[k]
            logger.warning("Patron de lexico para %r no coincide con %d silabas", text, len(syllables))
        following = syllables[k + 1] if k + 1 < len(syllables) else None
        if following and not is_closed(following.onset) and not syllable.coda:
            return Weight.LIGHT
        return Weight.ANCEPS

    def assign_stress(self, word: PhoneticWord, penult_weight: Weight | None = None) -> int | None:
        """Regla de la penultima. Una penultima anceps cuenta como breve hasta escandir."""
        count = word.syllable_count
        if count == 0 or word.degenerate:
            return None
        if count <= 2:
            return 0
        weight = penult_weight or word.weights[count - 2]
        return count - 2 if weight is Weight.HEAVY else count - 3

    # --- versos ---------------------------------------------------------------

    def detect_elisions(self, line: PhoneticLine) -> PhoneticLine:
        elisions, prodelisions = [], []
        for i in range(len(line.words) - 1):
            current, following = line.words[i], line.words[i + 1]
            if not _ends_open(current.phonemes):
                continue
            if following.text.startswith("_") or following.text in PRODELIDED:
                prodelisions.append(i)
            elif _starts_open(following.phonemes):
                elisions.append(i)
        return PhoneticLine(text=line.text, words=line.words,
                            elisions=tuple(elisions), prodelisions=tuple(prodelisions))

    def phonetic_line(self, text: str) -> PhoneticLine:
        transcribed = self.transcribe(text)
        words = []
        for token in transcribed.split():
            host, _, clitic = token.partition("_")
            words.append(host)
            if clitic:
                words.append(f"_{clitic}")

        phonetic_words = []
        for word_text in words:
            word = self.syllabify(word_text)
            phonetic_words.append(word.with_stress(self.assign_stress(word)))
        return self.detect_elisions(PhoneticLine(text=transcribed, words=tuple(phonetic_words)))

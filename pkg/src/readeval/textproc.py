"""Sentence segmentation, word tokenization, syllable estimation and word
familiarity: the lexical counts every readability formula is built from.

Everything here is a pure function over strings. The shipped word lists and
abbreviation list are read once and cached.
"""
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Optional, Union

from .errors import EmptyText, WordListMissing

WORDLIST_NAMES = ("dale_chall", "spache")
SHIPPED_LISTS = WORDLIST_NAMES + ("stopwords_en",)

_APOSTROPHES = str.maketrans({"’": "'", "‘": "'", "ʼ": "'"})
_TERMINATOR = re.compile(r"[.!?]+[\"'”’)\]]*")
# what may open the next sentence after a terminator + whitespace; a bare "["
# covers editorial elisions like "[...]"
_SENTENCE_OPENER = re.compile(r"\s+(?:[\"'“‘(\[]*[A-Z0-9]|\[)")
_TRAILING_SPACE = re.compile(r"\s*\Z")
_SILENT_E = re.compile(r"(?:[^laeiouy]es|[^laeiouy]e)$")
_VOWEL_GROUP = re.compile(r"[aeiouy]{1,2}")


@dataclass(frozen=True)
class Sentence:
    text: str
    index: int


@dataclass(frozen=True)
class WordToken:
    surface: str
    normalized: str
    letter_count: int
    syllable_count: int


@dataclass(frozen=True)
class WordList:
    name: str
    entries: frozenset

    def __post_init__(self):
        for e in self.entries:
            if e != e.lower() or any(c.isspace() for c in e) or not e:
                raise ValueError(f"invalid word-list entry {e!r} in {self.name}")

    def __contains__(self, word):
        return word in self.entries

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class TextStats:
    sentence_count: int
    word_count: int
    syllable_count: int
    letter_count: int
    complex_word_count: int
    dc_unfamiliar_count: int
    spache_unfamiliar_count: int
    easy_word_count: int
    hard_word_count: int

    def check(self):
        """Raise AssertionError if any counting invariant is broken."""
        assert self.sentence_count >= 1 and self.word_count >= 1
        assert self.easy_word_count + self.hard_word_count == self.word_count
        assert self.complex_word_count == self.hard_word_count
        assert 0 <= self.dc_unfamiliar_count <= self.word_count
        assert 0 <= self.spache_unfamiliar_count <= self.word_count
        assert self.syllable_count >= self.word_count
        assert self.letter_count >= self.word_count


# ---------------------------------------------------------------------------
# assets


def _read_list_file(lines: Iterable[str]) -> frozenset:
    words = set()
    for line in lines:
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line.lower())
    return frozenset(words)


def read_wordlist(path: Union[str, Path], name: Optional[str] = None) -> WordList:
    """Load a word list file: UTF-8, one word per line, ``#`` comments."""
    path = Path(path)
    with open(path, encoding="utf-8") as f:
        entries = _read_list_file(f)
    return WordList(name or path.stem, entries)


@lru_cache(maxsize=None)
def load_wordlist(name: str) -> WordList:
    """Load a shipped list: ``dale_chall``, ``spache`` or ``stopwords_en``."""
    if name not in SHIPPED_LISTS:
        raise WordListMissing(name)
    text = resources.files("readeval.data").joinpath(f"{name}.txt").read_text(encoding="utf-8")
    return WordList(name, _read_list_file(text.splitlines()))


def default_wordlists() -> dict:
    return {name: load_wordlist(name) for name in WORDLIST_NAMES}


@lru_cache(maxsize=None)
def default_abbreviations() -> frozenset:
    text = resources.files("readeval.data").joinpath("abbreviations.txt").read_text(encoding="utf-8")
    return _read_list_file(text.splitlines())


def asset_path(filename: str) -> Path:
    return Path(str(resources.files("readeval.data").joinpath(filename)))


# ---------------------------------------------------------------------------
# tokenization


def _strip_edges(token: str) -> str:
    start, end = 0, len(token)
    while start < end and not token[start].isalnum():
        start += 1
    while end > start and not token[end - 1].isalnum():
        end -= 1
    return token[start:end]


def make_token(surface: str) -> Optional[WordToken]:
    """Build a WordToken from one whitespace-delimited chunk.

    Returns None when the chunk holds no alphabetic character (numbers,
    bare punctuation), since those are not counted as words.
    """
    stripped = _strip_edges(surface)
    letters = sum(c.isalpha() for c in stripped)
    if letters == 0:
        return None
    normalized = stripped.lower().translate(_APOSTROPHES)
    return WordToken(surface, normalized, letters, _syllables(normalized, letters))


def tokenize(text: str) -> list:
    """Word tokens of ``text``: whitespace chunks with at least one letter."""
    tokens = []
    for chunk in text.split():
        tok = make_token(chunk)
        if tok is not None:
            tokens.append(tok)
    return tokens


def _syllables(word: str, letters: int) -> int:
    if len(word) <= 3:
        return 1
    word = _SILENT_E.sub("", word)
    if word.startswith("y"):
        word = word[1:]
    n = len(_VOWEL_GROUP.findall(word))
    if n == 0:
        # vowel-less acronym such as "SPSS" or "HPLC"
        n = max(1, math.ceil(letters / 3))
    return n


def count_syllables(word: Union[WordToken, str]) -> int:
    """Estimated syllable count, always at least 1.

    Counts groups of one or two adjacent vowels (y included) after dropping a
    silent final ``e``/``es`` and a leading ``y``. Words of three characters or
    fewer are one syllable.
    """
    if isinstance(word, WordToken):
        return word.syllable_count
    tok = make_token(word)
    if tok is None:
        raise ValueError(f"{word!r} contains no alphabetic character")
    return tok.syllable_count


# ---------------------------------------------------------------------------
# sentences


def _is_abbreviation(text: str, end: int, abbreviations) -> bool:
    start = end
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    word = text[start:end].lstrip("\"'([“‘").lower()
    return word in abbreviations


def segment_sentences(text: str, abbreviations: Optional[Iterable[str]] = None) -> list:
    """Split ``text`` into sentences.

    A boundary is a run of ``.``, ``!`` or ``?`` (optionally followed by
    closing quotes or brackets) that is followed by whitespace and a capital
    letter or digit (possibly behind an opening quote or bracket), or by the
    end of the text. Whitespace followed by ``[`` also splits, so editorial
    elisions like ``[...]`` start a new sentence. A period ending a listed
    abbreviation never splits. Fragments without any word are
    merged into the neighbouring sentence.
    """
    if abbreviations is None:
        abbrevs = default_abbreviations()
    else:
        abbrevs = default_abbreviations() | {a.lower() for a in abbreviations}

    pieces = []
    start = 0
    for m in _TERMINATOR.finditer(text):
        end = m.end()
        if not _TRAILING_SPACE.match(text, end) and not _SENTENCE_OPENER.match(text, end):
            continue
        punct_end = m.start() + len(m.group().rstrip("\"'”’)]"))
        if text[punct_end - 1] == "." and _is_abbreviation(text, punct_end, abbrevs):
            continue
        pieces.append(text[start:end])
        start = end
    if text[start:].strip():
        pieces.append(text[start:])

    merged = []
    for piece in pieces:
        if not tokenize(piece) and merged:
            merged[-1] += piece
        elif merged and not tokenize(merged[-1]):
            merged[-1] += piece
        else:
            merged.append(piece)
    sentences = [s.strip() for s in merged if s.strip()]
    if not sentences or not any(tokenize(s) for s in sentences):
        raise EmptyText("text contains no word tokens")
    return [Sentence(s, i) for i, s in enumerate(sentences)]


# ---------------------------------------------------------------------------
# familiarity


def _suffix_candidates(word: str):
    yield word
    if word.endswith("'s"):
        yield word[:-2]
    if word.endswith("ies") and len(word) > 4:
        yield word[:-3] + "y"
    if word.endswith("es") and len(word) > 3:
        yield word[:-2]
    if word.endswith("s") and not word.endswith("ss") and len(word) > 2:
        yield word[:-1]
    for suffix in ("ed", "ing"):
        if word.endswith(suffix) and len(word) > len(suffix) + 1:
            stem = word[: -len(suffix)]
            yield stem
            yield stem + "e"
            if len(stem) >= 2 and stem[-1] == stem[-2] and stem[-1] not in "aeiou":
                yield stem[:-1]
            if suffix == "ed" and stem.endswith("i"):
                yield stem[:-1] + "y"


def classify_familiar(word: Union[WordToken, str], wordlist: WordList) -> bool:
    """True if the word, or the word minus one inflectional suffix, is listed.

    Handles -s, -es, -ies, -'s, -ed and -ing, restoring a dropped final ``e``
    and undoubling a doubled consonant (``stopped`` -> ``stop``).
    """
    if wordlist is None or len(wordlist) == 0:
        raise WordListMissing("word list not loaded")
    norm = word.normalized if isinstance(word, WordToken) else word.lower().translate(_APOSTROPHES)
    return any(c in wordlist.entries for c in _suffix_candidates(norm))


# ---------------------------------------------------------------------------
# stats


def _resolve_lists(lists) -> Mapping[str, WordList]:
    if lists is None:
        return default_wordlists()
    if isinstance(lists, Mapping):
        found = dict(lists)
    else:
        found = {wl.name: wl for wl in lists}
    for name in WORDLIST_NAMES:
        if name not in found:
            raise WordListMissing(name)
    return found


def compute_stats(text: str, lists=None, abbreviations: Optional[Iterable[str]] = None) -> TextStats:
    """Count everything the eight readability formulas need."""
    wordlists = _resolve_lists(lists)
    dc, sp = wordlists["dale_chall"], wordlists["spache"]
    sentences = segment_sentences(text, abbreviations)
    words = syllables = letters = hard = dc_unfamiliar = sp_unfamiliar = 0
    for sent in sentences:
        for tok in tokenize(sent.text):
            words += 1
            syllables += tok.syllable_count
            letters += tok.letter_count
            if tok.syllable_count >= 3:
                hard += 1
            if not classify_familiar(tok, dc):
                dc_unfamiliar += 1
            if not classify_familiar(tok, sp):
                sp_unfamiliar += 1
    return TextStats(
        sentence_count=len(sentences),
        word_count=words,
        syllable_count=syllables,
        letter_count=letters,
        complex_word_count=hard,
        dc_unfamiliar_count=dc_unfamiliar,
        spache_unfamiliar_count=sp_unfamiliar,
        easy_word_count=words - hard,
        hard_word_count=hard,
    )

"""Regenerate the word-list assets shipped in src/readeval/data/.

Needs the dev-only packages ``py-readability-metrics``, ``textstat``, ``nltk``
and ``scikit-learn`` (for the stopword list). The generated files are committed,
so this only has to be rerun when the sources change.

    python3 scripts/build_wordlists.py
"""
import os
from pathlib import Path

from nltk.stem.porter import PorterStemmer
from sklearn.feature_extraction.text import ENGLISH_STOP_WORDS

DATA = Path(__file__).resolve().parents[1] / "src" / "readeval" / "data"

# Stems in the reference Spache list that have no Dale-Chall word stemming to them.
SPACHE_EXTRA = {
    "contest": "contest", "continu": "continue", "disappear": "disappear",
    "disappoint": "disappoint", "distanc": "distance", "dragon": "dragon",
    "exclaim": "exclaim", "fierc": "fierce", "gasp": "gasp", "grin": "grin",
    "growl": "growl", "imagin": "imagine", "jet": "jet", "perfect": "perfect",
    "picket": "picket", "practic": "practice", "pretend": "pretend",
    "probabl": "probably", "problem": "problem", "raccoon": "raccoon",
    "repli": "reply", "scold": "scold", "signal": "signal", "sniff": "sniff",
    "special": "special", "strike": "strike", "traffic": "traffic", "trot": "trot",
    "usual": "usual", "zoo": "zoo", "I": "i",
    "can\\t": "can't", "didn\\t": "didn't", "don\\t": "don't", "won\\t": "won't",
    "he\\": "he's", "i\\ll": "i'll", "i\\m": "i'm", "it\\": "it's",
    "let\\": "let's", "that\\": "that's",
}


def _read_lines(path):
    with open(path, encoding="utf-8") as f:
        return [line.strip() for line in f if line.strip()]


def _write(name, header, words):
    words = sorted(set(words))
    with open(DATA / name, "w", encoding="utf-8") as f:
        for line in header:
            f.write(f"# {line}\n")
        f.write("\n".join(words) + "\n")
    print(f"{name}: {len(words)} entries")


def main():
    import textstat
    import readability

    textstat_dir = Path(os.path.dirname(textstat.__file__))
    dale_chall = [w.lower() for w in _read_lines(textstat_dir / "resources" / "en" / "easy_words.txt")]
    _write(
        "dale_chall.txt",
        [
            "Dale-Chall list of ~3000 familiar words (Chall & Dale, 1995 revision).",
            "Source: textstat 0.7 resources/en/easy_words.txt (MIT licence), lowercased.",
        ],
        dale_chall,
    )

    ref_dir = Path(os.path.dirname(readability.__file__)) / "data"
    spache_stems = set(_read_lines(ref_dir / "spache_easy_porterstem.txt"))
    stemmer = PorterStemmer()
    spache = [w for w in dale_chall if stemmer.stem(w) in spache_stems]
    covered = {stemmer.stem(w) for w in spache}
    for stem in spache_stems - covered:
        word = SPACHE_EXTRA.get(stem)
        if word is not None:
            spache.append(word)
    _write(
        "spache.txt",
        [
            "Revised Spache easy-word list (~1000 words).",
            "Reconstructed from the Porter-stemmed copy in py-readability-metrics 1.4.5 (MIT):",
            "every Dale-Chall word whose Porter stem is on the stemmed list, plus hand-restored",
            "surface forms for stems without a Dale-Chall counterpart. Single letters other than 'i' omitted.",
        ],
        spache,
    )

    _write(
        "stopwords_en.txt",
        ["English stopwords for keyword extraction.", "Source: scikit-learn ENGLISH_STOP_WORDS (BSD-3)."],
        ENGLISH_STOP_WORDS,
    )


if __name__ == "__main__":
    main()

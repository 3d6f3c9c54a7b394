"""Seeded generator of science-summary-like prose for oracle comparisons and demos.

Sentences open with a determiner, end in ``.`` or ``!``, and contain no
numbers, acronyms, question marks or hyphenated compounds, which keeps
word-level counting unambiguous across tokenizers. The vocabulary also
avoids derived forms (like "measurement") whose familiarity depends on
whether a checker stems fully or strips only inflections.
"""
import random

DETERMINERS = ["the", "a", "this", "each", "every", "their", "our", "that"]
# monosyllabic, so capitalization never touches a three-syllable word
OPENERS = ["The", "A", "This", "Each", "Their", "Our", "That"]
ADJECTIVES = [
    "small", "large", "new", "clear", "simple", "serious", "common", "early",
    "careful", "important", "different", "significant", "respiratory", "molecular",
    "statistical", "experimental", "clinical", "noninvasive", "environmental",
    "quiet", "safe", "strong", "bright", "happy",
]
NOUNS = [
    "study", "team", "doctor", "patient", "animal", "tree", "river", "school",
    "family", "method", "device", "sample", "result", "question", "problem",
    "analysis", "inflammation", "hypothesis", "observation", "population",
    "chromatography", "biomarker", "syndrome", "mechanism", "temperature",
    "energy", "window", "garden", "child", "machine", "experiment", "protein",
]
PLURALS = [
    "studies", "doctors", "patients", "animals", "trees", "families", "samples",
    "results", "questions", "observations", "proteins", "children", "machines",
]
VERBS = [
    "measured", "tested", "found", "showed", "changed", "helped", "improved",
    "described", "examined", "compared", "reduced", "increased", "explained",
    "identified", "demonstrated", "investigated", "walked", "played", "watched",
]
PREPOSITIONS = ["in", "with", "for", "from", "during", "after", "through", "under"]
CONNECTIVES = ["and", "but", "because", "while", "although"]


def _noun_phrase(rng):
    parts = [rng.choice(DETERMINERS)]
    if rng.random() < 0.6:
        parts.append(rng.choice(ADJECTIVES))
    parts.append(rng.choice(NOUNS))
    return parts


def _clause(rng):
    words = _noun_phrase(rng) + [rng.choice(VERBS)]
    if rng.random() < 0.5:
        words.append(rng.choice(PLURALS))
    else:
        words += _noun_phrase(rng)
    if rng.random() < 0.6:
        words.append(rng.choice(PREPOSITIONS))
        words += _noun_phrase(rng)
    return words


def sentence(rng) -> str:
    words = _clause(rng)
    words[0] = rng.choice(OPENERS)
    while rng.random() < 0.45:
        words[-1] += ","
        words.append(rng.choice(CONNECTIVES))
        words += _clause(rng)
    return " ".join(words) + rng.choice([".", ".", ".", "!"])


def document(rng, n_sentences: int) -> str:
    return " ".join(sentence(rng) for _ in range(n_sentences))


def corpus(n_docs: int = 50, seed: int = 0, min_sentences: int = 4, max_sentences: int = 14) -> list:
    """``n_docs`` documents as ``{"id", "text", "dataset"}`` dicts."""
    rng = random.Random(seed)
    docs = []
    for i in range(n_docs):
        text = document(rng, rng.randint(min_sentences, max_sentences))
        docs.append({"id": f"syn-{i:03d}", "text": text, "dataset": f"synthetic-{i % 3}"})
    return docs

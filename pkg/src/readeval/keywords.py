"""YAKE-style unsupervised keyword extraction, used to summarize what judge
rationales talk about per score bucket or per dataset.

Lower scores mean more important keywords.
"""
import logging
import math
import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from statistics import median
from typing import Iterable, Mapping, Optional, Sequence

from .errors import EmptyText
from .textproc import WordList, load_wordlist, segment_sentences

log = logging.getLogger(__name__)

# punctuation inside a sentence ends a chunk; n-grams and neighbours never cross it
_CHUNK_BREAK = re.compile(r"[,;:()\[\]{}\"“”…]|\s[-–—]+\s")
_WORD = re.compile(r"[^\W_]+(?:['’\-][^\W_]+)*")


@dataclass(frozen=True)
class KeywordConfig:
    max_ngram: int = 3
    top_k: int = 20
    dedup_threshold: float = 0.9
    window: int = 1

    def validate(self):
        if not 1 <= self.max_ngram <= 3:
            raise ValueError("max_ngram must be 1, 2 or 3")
        if self.top_k < 1:
            raise ValueError("top_k must be positive")
        if not 0 < self.dedup_threshold <= 1:
            raise ValueError("dedup_threshold must lie in (0, 1]")
        if self.window < 1:
            raise ValueError("window must be at least 1")
        return self


@dataclass(frozen=True)
class TermFeatures:
    term: str
    tf: int
    casing: float
    position: float
    tf_norm: float
    relatedness: float
    sentence_spread: float
    score: float


@dataclass(frozen=True)
class Keyword:
    phrase: str
    score: float
    tf: int


@dataclass(frozen=True)
class Rationale:
    """A judge's reason joined with its score and dataset label."""
    score: float
    reason: str
    dataset: str = ""


def default_stopwords() -> WordList:
    return load_wordlist("stopwords_en")


def _chunks(document: str):
    """Sentences as lists of chunks, each chunk a list of surface tokens."""
    if not document or not document.strip():
        raise EmptyText("document is empty")
    out = []
    for sent in segment_sentences(document):
        chunks = []
        for part in _CHUNK_BREAK.split(sent.text):
            words = _WORD.findall(part)
            if words:
                chunks.append(words)
        if chunks:
            out.append(chunks)
    if not out:
        raise EmptyText("document has no words")
    return out


def _is_stop(word: str, stopwords) -> bool:
    return word in stopwords


def term_features(document: str, stopwords: Optional[Iterable[str]] = None, window: int = 1) -> dict:
    """Per-term feature table for every distinct non-stopword term (lowercased)."""
    stopwords = default_stopwords() if stopwords is None else stopwords
    sentences = _chunks(document)
    tf = Counter()
    upper = Counter()
    acronym = Counter()
    sent_ids = defaultdict(set)
    left = defaultdict(Counter)
    right = defaultdict(Counter)

    for s_idx, chunks in enumerate(sentences):
        first = True
        for words in chunks:
            lowered = [w.lower() for w in words]
            for i, (surface, term) in enumerate(zip(words, lowered)):
                at_start = first and i == 0
                if _is_stop(term, stopwords):
                    continue
                tf[term] += 1
                sent_ids[term].add(s_idx)
                if len(surface) > 1 and surface.isupper():
                    acronym[term] += 1
                elif surface[0].isupper() and not at_start:
                    upper[term] += 1
                for j in range(max(0, i - window), i):
                    left[term][lowered[j]] += 1
                for j in range(i + 1, min(len(words), i + 1 + window)):
                    right[term][lowered[j]] += 1
            first = False

    if not tf:
        return {}
    counts = list(tf.values())
    mean = sum(counts) / len(counts)
    std = math.sqrt(sum((c - mean) ** 2 for c in counts) / len(counts))
    max_tf = max(counts)
    n_sent = len(sentences)

    table = {}
    for term in sorted(tf):
        f = tf[term]
        casing = max(upper[term], acronym[term]) / (1 + math.log(f))
        position = math.log(math.log(3 + median(sorted(sent_ids[term]))))
        tf_norm = f / (mean + std)
        wl = len(left[term]) / sum(left[term].values()) if left[term] else 0.0
        wr = len(right[term]) / sum(right[term].values()) if right[term] else 0.0
        rel = 1 + (wl + wr) * f / max_tf
        spread = len(sent_ids[term]) / n_sent
        score = (position * rel) / (casing + tf_norm / rel + spread / rel)
        table[term] = TermFeatures(term, f, casing, position, tf_norm, rel, spread, score)
    return table


def levenshtein(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def similarity(a: str, b: str) -> float:
    """1 minus the edit distance normalized by the longer string."""
    if not a and not b:
        return 1.0
    return 1.0 - levenshtein(a, b) / max(len(a), len(b))


def _candidates(sentences, max_ngram: int, stopwords) -> Counter:
    found = Counter()
    for chunks in sentences:
        for words in chunks:
            lowered = [w.lower() for w in words]
            for n in range(1, max_ngram + 1):
                for i in range(len(lowered) - n + 1):
                    gram = lowered[i:i + n]
                    if _is_stop(gram[0], stopwords) or _is_stop(gram[-1], stopwords):
                        continue
                    found[tuple(gram)] += 1
    return found


def extract_keywords(
    document: str,
    max_ngram: int = 3,
    top_k: int = 20,
    dedup_threshold: float = 0.9,
    stopwords: Optional[Iterable[str]] = None,
    window: int = 1,
) -> list:
    """Top keywords of a document in ascending score order."""
    KeywordConfig(max_ngram, top_k, dedup_threshold, window).validate()
    stopwords = default_stopwords() if stopwords is None else stopwords
    features = term_features(document, stopwords, window)
    candidates = _candidates(_chunks(document), max_ngram, stopwords)

    scored = []
    for gram, count in candidates.items():
        # stopwords inside a phrase carry no score of their own
        members = [features[w].score for w in gram if w in features]
        prod = math.prod(members)
        score = prod / (count * (1 + sum(members)))
        scored.append(Keyword(" ".join(gram), score, count))
    scored.sort(key=lambda k: (k.score, k.phrase))

    kept = []
    for kw in scored:
        if all(similarity(kw.phrase, other.phrase) <= dedup_threshold for other in kept):
            kept.append(kw)
            if len(kept) == top_k:
                break
    return kept


def score_bucket(score: float) -> str:
    """Half steps go down: 4.5 lands in bucket "4"."""
    return str(int(math.floor(score)))


def stratify_keywords(
    judgments: Sequence[Rationale],
    by: str = "score",
    top_k: int = 20,
    **options,
) -> dict:
    """Concatenate reasons per stratum and extract keywords from each.

    ``by`` is "score" (buckets 1..5) or "dataset". Strata whose text yields
    no keywords are skipped with a warning.
    """
    if by not in ("score", "dataset"):
        raise ValueError("by must be 'score' or 'dataset'")
    texts = defaultdict(list)
    for j in judgments:
        key = score_bucket(j.score) if by == "score" else j.dataset
        if j.reason and j.reason.strip():
            texts[key].append(j.reason.strip())
        else:
            texts.setdefault(key, [])
    out = {}
    for key in sorted(texts):
        joined = " ".join(_terminated(r) for r in texts[key])
        try:
            kws = extract_keywords(joined, top_k=top_k, **options) if joined else []
        except EmptyText:
            kws = []
        if not kws:
            log.warning("stratum %r has no keywords; skipped", key)
            continue
        out[key] = kws
    return out


def _terminated(reason: str) -> str:
    # keep each rationale its own sentence once concatenated
    return reason if reason[-1] in ".!?" else reason + "."


def rationales_from_journal(entries, datasets: Optional[Mapping[str, str]] = None) -> list:
    """Successful journal entries as Rationale objects, labelled via ``datasets``."""
    datasets = datasets or {}
    return [
        Rationale(e.score, e.reason, datasets.get(e.id, ""))
        for e in entries
        if e.ok
    ]

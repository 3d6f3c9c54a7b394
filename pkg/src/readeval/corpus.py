"""Corpus I/O and dataset-level analyses: per-dataset score summaries,
histograms, cross-scorer dataset rankings, and metric-vs-judge agreement."""
import csv
import json
from collections import Counter, defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional, Sequence

from .errors import AlignmentError, CorpusParseError, DuplicateId, EmptyDataset, KeyMismatch
from .lm_judge import half_step_bins, is_half_step
from .metrics import MetricId, binarize_traditional
from .stats import binarize_lm, cohens_kappa, summary_stats


@dataclass(frozen=True)
class SummaryRecord:
    id: str
    text: str
    dataset: str = ""
    human_score: Optional[float] = None

    def to_dict(self) -> dict:
        d = {"id": self.id, "text": self.text, "dataset": self.dataset}
        if self.human_score is not None:
            d["human_score"] = self.human_score
        return d


@dataclass(frozen=True)
class DatasetSummary:
    dataset: str
    n: int
    mean: float
    median: float
    variance: float
    histogram: dict  # bin (1.0, 1.5, ..., 5.0) -> count


@dataclass(frozen=True)
class RankEntry:
    dataset: str
    score_a: float
    rank_a: int
    score_b: float
    rank_b: int
    delta_rank: int


def _record(d: dict, where: int) -> SummaryRecord:
    if not isinstance(d, dict):
        raise CorpusParseError("expected a JSON object", where)
    doc_id = d.get("id")
    if doc_id is None or str(doc_id).strip() == "":
        raise CorpusParseError("missing 'id'", where)
    text = d.get("text")
    if not isinstance(text, str) or not text.strip():
        raise CorpusParseError(f"record {doc_id!r} has empty 'text'", where)
    score = d.get("human_score")
    if score in ("", None):
        score = None
    else:
        try:
            score = float(score)
        except (TypeError, ValueError):
            raise CorpusParseError(f"record {doc_id!r}: human_score {score!r} is not a number", where) from None
        if not 1.0 <= score <= 5.0:
            raise CorpusParseError(f"record {doc_id!r}: human_score {score} outside [1, 5]", where)
    return SummaryRecord(str(doc_id), text, str(d.get("dataset") or ""), score)


def load_corpus(path, fmt: Optional[str] = None) -> list:
    """Read summaries from JSON-lines or CSV (columns id, text, dataset, human_score).

    Errors name the offending line. Duplicate ids are rejected.
    """
    path = Path(path)
    fmt = fmt or ("csv" if path.suffix.lower() == ".csv" else "jsonl")
    records, seen = [], {}
    if fmt == "jsonl":
        with open(path, encoding="utf-8") as f:
            rows = []
            for n, line in enumerate(f, 1):
                if not line.strip():
                    continue
                try:
                    rows.append((n, json.loads(line)))
                except json.JSONDecodeError as e:
                    raise CorpusParseError(f"invalid JSON ({e.msg})", n) from None
    elif fmt == "csv":
        with open(path, encoding="utf-8", newline="") as f:
            reader = csv.DictReader(f)
            if reader.fieldnames is None or "id" not in reader.fieldnames or "text" not in reader.fieldnames:
                raise CorpusParseError("CSV needs 'id' and 'text' columns", 1)
            # header is line 1; assumes no embedded newlines when reporting lines
            rows = [(reader.line_num, row) for row in reader]
    else:
        raise ValueError(f"unknown corpus format {fmt!r}")
    for n, row in rows:
        rec = _record(row, n)
        if rec.id in seen:
            raise DuplicateId(f"duplicate id {rec.id!r} (first on line {seen[rec.id]})", n)
        seen[rec.id] = n
        records.append(rec)
    return records


def write_corpus(records: Sequence[SummaryRecord], path) -> None:
    """Canonical JSON-lines serialization; ``load_corpus`` reads it back unchanged."""
    with open(path, "w", encoding="utf-8") as f:
        for r in records:
            f.write(json.dumps(r.to_dict(), ensure_ascii=False, sort_keys=True) + "\n")


def load_ratings(path) -> dict:
    """Human ratings file: JSON lines of ``{"id": ..., "ratings": [int, ...]}``."""
    out = {}
    with open(path, encoding="utf-8") as f:
        for n, line in enumerate(f, 1):
            if not line.strip():
                continue
            try:
                d = json.loads(line)
                doc_id, ratings = str(d["id"]), list(d["ratings"])
            except (ValueError, KeyError, TypeError) as e:
                raise CorpusParseError(f"bad ratings line: {e}", n) from None
            if doc_id in out:
                raise DuplicateId(f"duplicate id {doc_id!r}", n)
            out[doc_id] = ratings
    return out


def histogram(scores: Sequence[float]) -> dict:
    counts = Counter()
    for s in scores:
        if not is_half_step(s):
            raise ValueError(f"score {s} is not a half step in [1, 5]")
        counts[round(s * 2) / 2] += 1
    return {b: counts.get(b, 0) for b in half_step_bins()}


def analyze_dataset(dataset: str, scores: Sequence[float], sample_variance: bool = False) -> DatasetSummary:
    if len(scores) == 0:
        raise EmptyDataset(f"dataset {dataset!r} has no scored records")
    mean, median, var = summary_stats(scores, sample_variance=sample_variance)
    return DatasetSummary(dataset, len(scores), mean, median, var, histogram(scores))


def analyze_datasets(scores_by_dataset: Mapping[str, Sequence[float]], sample_variance: bool = False) -> list:
    return [analyze_dataset(name, scores_by_dataset[name], sample_variance) for name in scores_by_dataset]


def group_by_dataset(records: Sequence[SummaryRecord], scores: Mapping[str, float]) -> dict:
    """Dataset name -> list of scores, for records that have a score."""
    grouped = defaultdict(list)
    for r in records:
        if r.id in scores:
            grouped[r.dataset].append(scores[r.id])
    return dict(grouped)


def _ranks(means: Mapping[str, float], higher_is_better: bool) -> dict:
    # ties fall back to dataset name so the order is total
    if higher_is_better:
        order = sorted(means, key=lambda d: (-means[d], d))
    else:
        order = sorted(means, key=lambda d: (means[d], d))
    return {d: i for i, d in enumerate(order, 1)}


def rank_datasets(
    means_a: Mapping[str, float],
    means_b: Mapping[str, float],
    a_higher_is_better: bool = True,
    b_higher_is_better: bool = False,
) -> list:
    """Rank datasets by two scorers (rank 1 = most readable) and report the shift.

    Defaults fit an LM judge as scorer a and FKGL as scorer b.
    ``delta_rank`` is ``rank_a - rank_b``: a dataset the LM ranks 10th and
    FKGL 2nd gets +8.
    """
    if set(means_a) != set(means_b):
        raise KeyMismatch(f"dataset sets differ: {sorted(set(means_a) ^ set(means_b))}")
    ra = _ranks(means_a, a_higher_is_better)
    rb = _ranks(means_b, b_higher_is_better)
    return [
        RankEntry(d, means_a[d], ra[d], means_b[d], rb[d], ra[d] - rb[d])
        for d in means_a
    ]


def agreement_analysis(fkgl_scores: Mapping[str, float], judge_scores: Mapping[str, float]) -> float:
    """Cohen's kappa between binarized FKGL (< 12 is high) and judge scores (>= 3 is high)."""
    if set(fkgl_scores) != set(judge_scores):
        missing = sorted(set(fkgl_scores) ^ set(judge_scores))
        raise AlignmentError(f"{len(missing)} ids are not in both inputs, e.g. {missing[:3]}")
    ids = sorted(fkgl_scores)
    a = [binarize_traditional(MetricId.FKGL, fkgl_scores[i]) for i in ids]
    b = [binarize_lm(judge_scores[i]) for i in ids]
    return cohens_kappa(a, b)


def load_scores(path) -> dict:
    """Per-document scores from JSON lines ``{"id", "dataset", "score"}``, grouped by dataset."""
    grouped, seen = defaultdict(list), set()
    with open(path, encoding="utf-8") as f:
        for n, line in enumerate(f, 1):
            if not line.strip():
                continue
            try:
                d = json.loads(line)
                doc_id, dataset, score = str(d["id"]), str(d["dataset"]), float(d["score"])
            except (ValueError, KeyError, TypeError) as e:
                raise CorpusParseError(f"bad score line: {e}", n) from None
            if doc_id in seen:
                raise DuplicateId(f"duplicate id {doc_id!r}", n)
            seen.add(doc_id)
            grouped[dataset].append(score)
    return dict(grouped)

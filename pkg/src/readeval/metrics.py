"""The eight traditional readability formulas, their grade bands, sign
orientation for correlation, and FKGL binarization."""
import bisect
import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import DomainError, UnsupportedBinarization
from .textproc import TextStats, compute_stats

HIGH = "high"
LOW = "low"

# below this many words the formulas are outside their calibration range
SHORT_TEXT_WORDS = 30


class MetricId(str, enum.Enum):
    FKGL = "FKGL"
    FRE = "FRE"
    DCRS = "DCRS"
    ARI = "ARI"
    CLI = "CLI"
    GFI = "GFI"
    SPACHE = "SPACHE"
    LW = "LW"

    def __str__(self):
        return self.value

    @property
    def higher_is_readable(self) -> bool:
        return self in (MetricId.FRE, MetricId.LW)


ALL_METRICS = tuple(MetricId)


@dataclass(frozen=True)
class Coefficients:
    """Formula constants that differ between published variants."""

    name: str
    fkgl_words_per_sentence: float
    spache_words_per_sentence: float
    spache_percent_unfamiliar: float
    spache_constant: float


# Constants used by py-readability-metrics 1.4.5, which produced the published scores.
REFERENCE = Coefficients("reference", 0.38, 0.141, 0.086, 0.839)
# Flesch-Kincaid 0.39 and the 1974 revised Spache formula.
TEXTBOOK = Coefficients("textbook", 0.39, 0.121, 0.082, 0.659)
VARIANTS = {c.name: c for c in (REFERENCE, TEXTBOOK)}


BANDS = (
    "below high school",
    "high school (9-12)",
    "college",
    "college graduate",
    "above college graduate",
)

# Cut points between consecutive BANDS, ascending in difficulty. Each list
# places the metric's grade-12 anchor (FKGL/CLI/GFI/Spache 12, ARI 13,
# DCRS 8.9, FRE 50) in the high-school band. FRE runs the other way, so its
# cuts are applied to the value from the top down.
_GRADE_CUTS = {
    MetricId.FKGL: [8.5, 12.5, 16.5, 18.5],
    MetricId.CLI: [8.5, 12.5, 16.5, 18.5],
    MetricId.GFI: [8.5, 12.5, 16.5, 18.5],
    MetricId.SPACHE: [8.5, 12.5, 16.5, 18.5],
    MetricId.ARI: [9.5, 13.5, 16.5, 18.5],
    MetricId.DCRS: [7.0, 9.0, 10.0, 12.0],
    # approximate: LW's published grade-12 anchor (60) is off its own scale
    MetricId.LW: [8.5, 12.5, 16.5, 20.5],
}
_FRE_CUTS = [60.0, 50.0, 30.0, 10.0]


@dataclass(frozen=True)
class MetricScore:
    metric: MetricId
    value: float
    higher_is_readable: bool
    grade_band: str
    warning: Optional[str] = None


def _raw_value(metric: MetricId, s: TextStats, c: Coefficients) -> float:
    W, S = s.word_count, s.sentence_count
    if W <= 0 or S <= 0:
        raise DomainError("word and sentence counts must be positive")
    wps = W / S
    if metric is MetricId.FKGL:
        return c.fkgl_words_per_sentence * wps + 11.8 * (s.syllable_count / W) - 15.59
    if metric is MetricId.FRE:
        return 206.835 - 1.015 * wps - 84.6 * (s.syllable_count / W)
    if metric is MetricId.DCRS:
        pct = s.dc_unfamiliar_count / W * 100
        raw = 0.1579 * pct + 0.0496 * wps
        return raw + 3.6365 if pct > 5 else raw
    if metric is MetricId.ARI:
        return 4.71 * (s.letter_count / W) + 0.5 * wps - 21.43
    if metric is MetricId.CLI:
        per100 = W / 100
        return 0.0588 * (s.letter_count / per100) - 0.296 * (S / per100) - 15.8
    if metric is MetricId.GFI:
        return 0.4 * (wps + 100 * (s.complex_word_count / W))
    if metric is MetricId.SPACHE:
        pct = s.spache_unfamiliar_count / W * 100
        return c.spache_words_per_sentence * wps + c.spache_percent_unfamiliar * pct + c.spache_constant
    if metric is MetricId.LW:
        r = (s.easy_word_count + 3 * s.hard_word_count) / S
        return r / 2 if r > 20 else (r - 2) / 2
    raise ValueError(f"unknown metric {metric!r}")


def band_for(metric: MetricId, value: float) -> str:
    metric = MetricId(metric)
    if metric is MetricId.FRE:
        idx = sum(value < cut for cut in _FRE_CUTS)
    else:
        idx = bisect.bisect_right(_GRADE_CUTS[metric], value)
    return BANDS[idx]


def compute_metric(metric, stats: TextStats, variant: Coefficients = REFERENCE) -> MetricScore:
    metric = MetricId(metric)
    if isinstance(variant, str):
        variant = VARIANTS[variant]
    value = _raw_value(metric, stats, variant)
    warning = None
    if stats.word_count < SHORT_TEXT_WORDS:
        warning = f"only {stats.word_count} words; formulas are calibrated on 100-word samples"
    return MetricScore(metric, value, metric.higher_is_readable, band_for(metric, value), warning)


def score_stats(stats: TextStats, metrics: Iterable = ALL_METRICS, variant=REFERENCE) -> list:
    return [compute_metric(m, stats, variant) for m in metrics]


def score_all(text: str, variant=REFERENCE, lists=None, metrics: Iterable = ALL_METRICS) -> list:
    """All eight metric scores for ``text``, in :data:`ALL_METRICS` order."""
    return score_stats(compute_stats(text, lists), metrics, variant)


def to_grade_band(score: MetricScore) -> str:
    """Descriptive US education band; out-of-range values land in the end bands."""
    return band_for(score.metric, score.value)


def orient_value(metric, value: float) -> float:
    return value if MetricId(metric).higher_is_readable else -value


def orient_for_correlation(scores: Sequence[MetricScore]) -> list:
    """Negate every score except FRE and LW so that higher always means more readable."""
    return [(s.metric, orient_value(s.metric, s.value)) for s in scores]


FKGL_HIGH_READABILITY_BELOW = 12.0


def binarize_traditional(metric, value: float) -> str:
    """FKGL strictly under 12 counts as high readability."""
    if MetricId(metric) is not MetricId.FKGL:
        raise UnsupportedBinarization(f"no binarization defined for {metric}")
    return HIGH if value < FKGL_HIGH_READABILITY_BELOW else LOW

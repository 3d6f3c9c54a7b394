"""Correlation, significance and agreement statistics for comparing scorers
with human judgments."""
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import AllTied, DegenerateVariance, DomainError, EmptyInput, EmptyRatings, RangeError
from .metrics import HIGH, LOW


@dataclass(frozen=True)
class PairedSample:
    x: tuple
    y: tuple

    def __init__(self, x, y):
        x, y = tuple(float(v) for v in x), tuple(float(v) for v in y)
        if len(x) != len(y):
            raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def n(self) -> int:
        return len(self.x)


@dataclass(frozen=True)
class CorrelationReport:
    scorer_id: str
    pearson: float
    kendall_tau: float
    n: int


@dataclass(frozen=True)
class SignificanceResult:
    scorer_a: str
    scorer_b: str
    t_statistic: float
    p_value: float
    df: int


def _pair(sample_or_x, y=None):
    if y is None:
        s = sample_or_x
        return np.asarray(s.x, dtype=float), np.asarray(s.y, dtype=float)
    x, y = np.asarray(sample_or_x, dtype=float), np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError(f"length mismatch: {x.shape} vs {y.shape}")
    return x, y


def pearson(sample, y=None) -> float:
    """Product-moment correlation. Accepts a PairedSample or two sequences."""
    x, y = _pair(sample, y)
    if x.size < 2:
        raise ValueError("need at least 2 observations")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = np.dot(dx, dx)
    syy = np.dot(dy, dy)
    if sxx == 0 or syy == 0:
        raise DegenerateVariance("one of the inputs is constant")
    r = np.dot(dx, dy) / math.sqrt(sxx * syy)
    return float(min(1.0, max(-1.0, r)))


def kendall_tau_b(sample, y=None) -> float:
    """Kendall's tau-b, with the tie correction in the denominator."""
    x, y = _pair(sample, y)
    n = x.size
    if n < 2:
        raise ValueError("need at least 2 observations")
    concordance = 0
    x_ties = y_ties = 0
    # row-at-a-time keeps memory linear for corpus-sized inputs
    for i in range(n - 1):
        sx = np.sign(x[i + 1:] - x[i])
        sy = np.sign(y[i + 1:] - y[i])
        concordance += int(np.dot(sx, sy))
        x_ties += int(np.count_nonzero(sx == 0))
        y_ties += int(np.count_nonzero(sy == 0))
    n0 = n * (n - 1) // 2
    if x_ties == n0 or y_ties == n0:
        raise AllTied("every value of one input is identical")
    tau = concordance / math.sqrt((n0 - x_ties) * (n0 - y_ties))
    return float(min(1.0, max(-1.0, tau)))


def correlation_report(scorer_id: str, scores, human) -> CorrelationReport:
    return CorrelationReport(scorer_id, pearson(scores, human), kendall_tau_b(scores, human), len(human))


# ---------------------------------------------------------------------------
# Student t distribution via the regularized incomplete beta function


def _betacf(a, b, x, eps=1e-15, max_iter=500):
    # modified Lentz evaluation of the incomplete-beta continued fraction
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    d = tiny if abs(d) < tiny else d
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = tiny if abs(d) < tiny else d
        c = 1.0 + aa / c
        c = tiny if abs(c) < tiny else c
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = tiny if abs(d) < tiny else d
        c = 1.0 + aa / c
        c = tiny if abs(c) < tiny else c
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            return h
    raise ArithmeticError("incomplete beta continued fraction did not converge")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    if x == 0.0 or x == 1.0:
        return x
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def t_sf(t: float, df: float) -> float:
    """Upper tail P(T > t) of Student's t with ``df`` degrees of freedom."""
    if t == 0:
        return 0.5
    tail = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t))
    return tail if t > 0 else 1.0 - tail


def t_cdf(t: float, df: float) -> float:
    return 1.0 - t_sf(t, df) if t > 0 else t_sf(-t, df)


def williams_test(r_h_a: float, r_h_b: float, r_a_b: float, n: int, scorer_a="a", scorer_b="b") -> SignificanceResult:
    """Williams' test that scorer a correlates with humans more than scorer b.

    ``r_h_a`` and ``r_h_b`` are each scorer's correlation with the human
    scores, ``r_a_b`` the correlation between the two scorers. The p-value is
    one-tailed (H1: r_h_a > r_h_b) with n - 3 degrees of freedom.
    """
    for r in (r_h_a, r_h_b, r_a_b):
        if not -1.0 < r < 1.0:
            raise DomainError(f"correlation {r} outside (-1, 1)")
    if n < 4:
        raise DomainError("williams test needs n >= 4")
    k = 1 - r_h_a ** 2 - r_h_b ** 2 - r_a_b ** 2 + 2 * r_h_a * r_h_b * r_a_b
    if k <= 0:
        raise DomainError("correlation matrix is not positive definite")
    r_bar = (r_h_a + r_h_b) / 2
    numerator = (r_h_a - r_h_b) * math.sqrt((n - 1) * (1 + r_a_b))
    denominator = math.sqrt(2 * k * (n - 1) / (n - 3) + r_bar ** 2 * (1 - r_a_b) ** 3)
    t = numerator / denominator
    df = n - 3
    return SignificanceResult(scorer_a, scorer_b, t, t_sf(t, df), df)


# ---------------------------------------------------------------------------
# agreement and descriptive statistics


def cohens_kappa(a: Sequence[str], b: Sequence[str]) -> float:
    """Cohen's kappa for two raters assigning ``high``/``low`` labels."""
    if len(a) != len(b):
        raise ValueError("label sequences differ in length")
    n = len(a)
    if n == 0:
        raise EmptyInput("no labels")
    for label in (*a, *b):
        if label not in (HIGH, LOW):
            raise ValueError(f"unknown label {label!r}")
    agree = sum(x == y for x, y in zip(a, b)) / n
    pa = sum(x == HIGH for x in a) / n
    pb = sum(y == HIGH for y in b) / n
    expected = pa * pb + (1 - pa) * (1 - pb)
    if expected == 1:
        # both raters used one and the same label throughout
        return 1.0
    return (agree - expected) / (1 - expected)


def summary_stats(values: Sequence[float], sample_variance: bool = False):
    """(mean, median, variance). Population variance unless ``sample_variance``."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise EmptyInput("no values")
    ddof = 1 if sample_variance else 0
    if v.size <= ddof:
        raise EmptyInput("sample variance needs at least 2 values")
    return float(v.mean()), float(np.median(v)), float(v.var(ddof=ddof))


def average_annotator_scores(ratings: Sequence[Sequence[int]]) -> list:
    means = []
    for i, r in enumerate(ratings):
        if len(r) == 0:
            raise EmptyRatings(f"summary {i} has no ratings")
        for value in r:
            if value not in (1, 2, 3, 4, 5):
                raise RangeError(f"rating {value!r} outside 1..5")
        means.append(sum(r) / len(r))
    return means


HUMAN_HIGH_READABILITY_FROM = 3.0


def binarize_human(mean_score: float) -> str:
    """Mean rating of 3 or more counts as high readability."""
    if not 1.0 <= mean_score <= 5.0:
        raise RangeError(f"score {mean_score} outside [1, 5]")
    return HIGH if mean_score >= HUMAN_HIGH_READABILITY_FROM else LOW


# LM judge scores use the same 1-5 scale and threshold
binarize_lm = binarize_human

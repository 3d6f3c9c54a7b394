"""Adapter around py-readability-metrics, the package the published scores were
computed with. Used only as a test oracle.

Its sentence splitter needs NLTK's downloadable punkt model, which is not
available offline, so sentences are split with an untrained Punkt tokenizer
that knows the shipped abbreviations.
"""
from nltk.tokenize.punkt import PunktParameters, PunktSentenceTokenizer
from readability.scorers import ARI, ColemanLiau, DaleChall, Flesch, FleschKincaid, GunningFog, LinsearWrite, Spache
from readability.text.analyzer import Analyzer, AnalyzerStatistics
from readability.text.syllables import count as reference_syllables  # noqa: F401

from readeval.textproc import default_abbreviations

SCORERS = {
    "FKGL": FleschKincaid,
    "FRE": Flesch,
    "DCRS": DaleChall,
    "ARI": ARI,
    "CLI": ColemanLiau,
    "GFI": GunningFog,
    "SPACHE": Spache,
    "LW": LinsearWrite,
}


def _punkt():
    params = PunktParameters()
    params.abbrev_types = {a.rstrip(".").lower() for a in default_abbreviations()}
    return PunktSentenceTokenizer(params)


class OfflineAnalyzer(Analyzer):
    _splitter = _punkt()

    def _tokenize_sentences(self, text):
        return self._splitter.tokenize(text)


def reference_stats(stats):
    """Our TextStats expressed as the reference package's statistics object."""
    return AnalyzerStatistics({
        "num_syllables": stats.syllable_count,
        "num_poly_syllable_words": stats.hard_word_count,
        "num_words": stats.word_count,
        "num_sentences": stats.sentence_count,
        "num_letters": stats.letter_count,
        "num_gunning_complex": stats.complex_word_count,
        "num_dale_chall_complex": stats.dc_unfamiliar_count,
        "num_spache_complex": stats.spache_unfamiliar_count,
    })


def _score(metric, ref_stats):
    scorer = SCORERS[metric].__new__(SCORERS[metric])  # skip the 100-word guard
    scorer._stats = ref_stats
    return scorer._score()


def scores_from_stats(stats) -> dict:
    ref = reference_stats(stats)
    return {m: _score(m, ref) for m in SCORERS}


def analyze_text(text):
    return OfflineAnalyzer().analyze(text)


def scores_from_text(text) -> dict:
    ref = analyze_text(text)
    return {m: _score(m, ref) for m in SCORERS}

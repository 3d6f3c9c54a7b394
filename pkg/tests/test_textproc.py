import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from readeval import synthetic
from readeval.errors import EmptyText, WordListMissing
from readeval.textproc import (
    TextStats, WordList, classify_familiar, compute_stats, count_syllables, load_wordlist, make_token,
    read_wordlist, segment_sentences, tokenize,
)

from .reference_oracle import analyze_text, reference_syllables

words = st.text(alphabet="abcdefghijklmnopqrstuvwxyz", min_size=1, max_size=15)


# -- segmentation ----------------------------------------------------------

def test_two_plain_sentences():
    assert [s.text for s in segment_sentences("A cat. A dog.")] == ["A cat.", "A dog."]


def test_abbreviation_does_not_split():
    assert len(segment_sentences("Dr. Smith ran.")) == 1
    assert len(segment_sentences("See Fig. 2 for details. It helps.")) == 2
    assert len(segment_sentences("Use tools, e.g. Python and R. Then stop.")) == 2


def test_lowercase_after_period_does_not_split():
    assert len(segment_sentences("The value was 3.5 units. next to nothing.")) == 1


def test_exclamation_and_question_marks():
    assert len(segment_sentences("Stop! Why now? Because.")) == 3


def test_closing_quote_stays_with_sentence():
    sents = segment_sentences('He said "go." Then he left.')
    assert [s.text for s in sents] == ['He said "go."', "Then he left."]


def test_sentence_indices_are_ordinal():
    assert [s.index for s in segment_sentences("A b. C d. E f.")] == [0, 1, 2]


def test_custom_abbreviations():
    assert len(segment_sentences("Prof. Jones spoke.")) == 1
    assert len(segment_sentences("Xyz. Jones spoke.")) == 2
    assert len(segment_sentences("Xyz. Jones spoke.", abbreviations={"xyz."})) == 1


@pytest.mark.parametrize("text", ["", "   ", "... !!", "12 34."])
def test_no_words_raises(text):
    with pytest.raises(EmptyText):
        segment_sentences(text)


def test_excerpt_sentence_count_matches_reference(excerpt):
    ours = segment_sentences(excerpt)
    assert len(ours) == analyze_text(excerpt).num_sentences == 4


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 12))
def test_sentences_cover_input(seed, n):
    text = synthetic.document(random.Random(seed), n)
    sents = segment_sentences(text)
    assert "".join(s.text for s in sents).replace(" ", "") == text.replace(" ", "")
    rejoined = " ".join(s.text for s in sents)
    assert len(segment_sentences(rejoined)) == len(sents)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 10))
def test_appending_a_sentence_is_monotone(seed, n):
    rng = random.Random(seed)
    text = synthetic.document(rng, n)
    before = compute_stats(text)
    after = compute_stats(text + " " + synthetic.sentence(rng))
    assert after.sentence_count == before.sentence_count + 1
    for name in TextStats.__dataclass_fields__:
        assert getattr(after, name) >= getattr(before, name)


# -- tokens and syllables --------------------------------------------------

def test_make_token_strips_punctuation():
    tok = make_token("(readable),")
    assert tok.surface == "(readable),"
    assert tok.normalized == "readable"
    assert tok.letter_count == 8
    assert tok.syllable_count == 3


def test_tokens_without_letters_are_not_words():
    assert make_token("123") is None
    assert make_token("--") is None
    assert [t.normalized for t in tokenize("In 2020 , 5 cats ran")] == ["in", "cats", "ran"]


def test_curly_apostrophe_normalized():
    assert make_token("patients’").normalized == "patients"
    assert make_token("don’t").normalized == "don't"


@pytest.mark.parametrize("word,expected", [("a", 1), ("readable", 3), ("strengths", 1), ("the", 1), ("syllable", 3)])
def test_syllable_examples(word, expected):
    assert count_syllables(word) == expected


@pytest.mark.parametrize("word", ["readable", "strengths", "inflammation", "chromatography", "every", "noninvasive"])
def test_syllables_match_reference(word):
    assert count_syllables(word) == reference_syllables(word)


def test_acronym_without_vowels_uses_letter_fallback():
    # no vowel group: ceil(letters / 3)
    assert count_syllables("SPSS") == 2
    assert count_syllables("NLP") == 1
    assert count_syllables("ARDS") == 1  # has a vowel group


@given(words)
def test_syllables_positive_and_case_invariant(w):
    assert count_syllables(w) >= 1
    assert count_syllables(w.upper()) == count_syllables(w)


@given(words.filter(lambda w: any(c in "aeiouy" for c in w)))
def test_syllables_agree_with_reference_for_vowel_words(w):
    ref = reference_syllables(w)
    if ref > 0:
        assert count_syllables(w) == ref
    else:
        # "bbbe" loses its only vowel to the silent-e rule; the reference says 0
        # and the letter fallback applies instead
        assert count_syllables(w) == max(1, math.ceil(len(w) / 3))


# -- word lists ------------------------------------------------------------

def test_shipped_lists_load():
    dc, sp = load_wordlist("dale_chall"), load_wordlist("spache")
    assert 2900 <= len(dc) <= 3100
    assert 900 <= len(sp) <= 1300
    assert all(w == w.lower() and " " not in w for w in dc.entries)


def test_unknown_list_raises():
    with pytest.raises(WordListMissing):
        load_wordlist("oxford")


def test_wordlist_rejects_bad_entries():
    with pytest.raises(ValueError):
        WordList("x", frozenset({"Cat"}))
    with pytest.raises(ValueError):
        WordList("x", frozenset({"ice cream"}))


def test_read_wordlist_skips_comments(tmp_path):
    p = tmp_path / "mini.txt"
    p.write_text("# provenance\ncat\n\nDOG\n", encoding="utf-8")
    assert read_wordlist(p).entries == frozenset({"cat", "dog"})


def test_familiar_examples():
    dc = load_wordlist("dale_chall")
    assert "cat" in dc and classify_familiar("cat", dc)
    assert not classify_familiar("glycochenodeoxycholic", dc)


@pytest.mark.parametrize("word", ["cats", "boxes", "jumped", "running", "hoping", "babies", "carried", "stopped"])
def test_familiar_after_one_inflection(word):
    lst = WordList("mini", frozenset({"cat", "box", "jump", "run", "hope", "baby", "carry", "stop"}))
    assert classify_familiar(word, lst)


def test_derivational_suffixes_are_not_stripped():
    lst = WordList("mini", frozenset({"measure", "kind"}))
    assert not classify_familiar("measurement", lst)
    assert not classify_familiar("kindness", lst)


@given(st.sampled_from(sorted(load_wordlist("dale_chall").entries)))
def test_familiarity_case_insensitive(w):
    dc = load_wordlist("dale_chall")
    assert classify_familiar(w.upper(), dc) == classify_familiar(w, dc) is True


# -- stats -----------------------------------------------------------------

def test_stats_trivial():
    s = compute_stats("The cat sat.")
    assert (s.sentence_count, s.word_count, s.syllable_count) == (1, 3, 3)
    s = compute_stats("Hi. Go now.")
    assert (s.sentence_count, s.word_count) == (2, 3)


def test_excerpt_stats_match_reference(excerpt):
    ours = compute_stats(excerpt)
    ref = analyze_text(excerpt)
    assert ours.sentence_count == ref.num_sentences
    assert ours.hard_word_count == ref.num_poly_syllable_words
    # The reference tokenizer keeps four punctuation-only tokens as words:
    # the detached "’" of "patients’" and "[", "...", "]". Each adds one
    # syllable and len(token) letters; every other count agrees.
    assert ref.num_words - ours.word_count == 4
    assert ref.num_syllables - ours.syllable_count == 4
    assert ref.num_letters - ours.letter_count == 1 + 1 + 3 + 1


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 12))
def test_stats_invariants(seed, n):
    compute_stats(synthetic.document(random.Random(seed), n)).check()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_synthetic_stats_equal_reference(seed):
    text = synthetic.document(random.Random(seed), 6)
    ours, ref = compute_stats(text), analyze_text(text)
    assert (ours.sentence_count, ours.word_count, ours.syllable_count, ours.letter_count) == (
        ref.num_sentences, ref.num_words, ref.num_syllables, ref.num_letters)
    assert ours.dc_unfamiliar_count == ref.num_dale_chall_complex
    assert ours.spache_unfamiliar_count == ref.num_spache_complex


def test_empty_text_raises():
    with pytest.raises(EmptyText):
        compute_stats("   ")

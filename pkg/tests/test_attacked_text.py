from collections import OrderedDict

import numpy as np
import pytest

from advtext.core.errors import TextEditError
from advtext.models.attacked_text import AttackedText, apply_casing, segment_words
from advtext.models.pos import PosTag
from advtext.resources.lexicons import PosLexicon


def test_segment_keeps_punctuation_in_separators():
    text = segment_words("The movie was perfect.")
    assert text.words == ("The", "movie", "was", "perfect")
    assert text.separators[-1] == "."
    assert text.text == "The movie was perfect."


def test_segment_empty():
    text = segment_words("")
    assert text.num_words == 0
    assert text.text == ""


def test_contraction_is_one_word():
    assert segment_words("aren't ok").words == ("aren't", "ok")


@pytest.mark.parametrize(
    "raw",
    [
        "  leading and trailing  ",
        "Well-known, state-of-the-art; (really?)",
        "tabs\tand\nnewlines",
        "naïve café — déjà vu",
        "snake_case words_here",
        "!!!",
    ],
)
def test_reconstruction_is_exact(raw):
    assert AttackedText(raw).text == raw


def test_reconstruction_on_random_strings():
    rng = np.random.default_rng(7)
    alphabet = list("ab c.'-,!\t\nXé_")
    for _ in range(300):
        raw = "".join(rng.choice(alphabet, size=int(rng.integers(0, 25))))
        text = AttackedText(raw)
        assert text.text == raw
        assert all(text.words)


def test_replace_word():
    text = AttackedText("The movie was perfect.")
    swapped = text.replace_word_at_index(3, "spotless")
    assert swapped.text == "The movie was spotless."
    assert swapped.modified_indices == {3}
    assert text.text == "The movie was perfect."
    assert text.modified_indices == frozenset()


def test_replace_with_same_word_keeps_text():
    text = AttackedText("The movie was perfect.")
    assert text.replace_word_at_index(1, "movie").text == text.text


def test_replace_inherits_title_case():
    assert AttackedText("The movie was perfect.").replace_word_at_index(0, "a").text == "A movie was perfect."


def test_casing_rules():
    assert apply_casing("GOOD", "fine") == "FINE"
    assert apply_casing("Good", "fine") == "Fine"
    assert apply_casing("good", "Fine") == "Fine"
    assert apply_casing("I", "we") == "We"


@pytest.mark.parametrize("index, word", [(4, "x"), (-1, "x"), (0, ""), (0, "two words"), (0, "...")])
def test_replace_rejects_bad_edits(index, word):
    with pytest.raises(TextEditError):
        AttackedText("The movie was perfect.").replace_word_at_index(index, word)


def test_delete_and_insert():
    assert AttackedText("a b c").delete_word_at_index(1).text == "a c"
    assert AttackedText("a b").insert_word_after_index(0, "x").text == "a x b"


def test_delete_collapses_separators():
    assert AttackedText("The movie was perfect.").delete_word_at_index(1).text == "The was perfect."
    assert AttackedText("The movie was perfect.").delete_word_at_index(3).text == "The movie was."
    assert AttackedText("only.").delete_word_at_index(0).text == "."


def test_edit_chain_tracks_original_indices():
    text = AttackedText("a b c d")
    edited = text.replace_word_at_index(3, "z").delete_word_at_index(0).insert_word_after_index(0, "x")
    assert edited.text == "b x c z"
    assert edited.original_indices == (1, -1, 2, 3)
    assert edited.modified_indices == {1, 3}
    assert text.aligned_indices(edited) == [(1, 0), (2, 2), (3, 3)]
    assert text.changed_word_pairs(edited) == [(3, 3)]
    assert text.num_words_diff(edited) == 3


def test_modified_indices_grow_along_chain():
    rng = np.random.default_rng(3)
    text = AttackedText("one two three four five six")
    for _ in range(6):
        before = set(text.modified_indices)
        text = text.replace_word_at_index(int(rng.integers(text.num_words)), "word")
        assert before <= text.modified_indices


def test_pos_tags_use_first_listed_tag():
    lexicon = PosLexicon({"dogs": [PosTag.NOUN], "bark": [PosTag.VERB, PosTag.NOUN]})
    assert AttackedText("dogs bark").pos_tags(lexicon) == [PosTag.NOUN, PosTag.VERB]
    assert AttackedText("cats").pos_tags(lexicon) == [PosTag.OTHER]
    assert AttackedText("").pos_tags(lexicon) == []


def test_columns_share_word_indices():
    text = AttackedText(OrderedDict([("premise", "a cat sat"), ("hypothesis", "it sat")]))
    assert text.column_labels == ("premise", "hypothesis")
    assert list(text.column_word_indices("hypothesis")) == [3, 4]
    edited = text.replace_word_at_index(3, "he")
    assert edited.column_texts == OrderedDict([("premise", "a cat sat"), ("hypothesis", "he sat")])


def test_window_around_index():
    text = AttackedText("a b c d e f")
    assert text.words_window_around_index(0, 3) == ["a", "b", "c"]
    assert text.words_window_around_index(3, 3) == ["c", "d", "e"]
    assert text.words_window_around_index(5, 3) == ["d", "e", "f"]
    assert text.words_window_around_index(2, float("inf")) == list(text.words)


def test_sentences():
    assert AttackedText("It was fine. Then It broke!").sentences() == ["It was fine.", "Then It broke!"]


def test_equality_by_text():
    assert AttackedText("a b") == AttackedText("a b").replace_word_at_index(0, "a")
    assert len({AttackedText("a b"), AttackedText("a b")}) == 1

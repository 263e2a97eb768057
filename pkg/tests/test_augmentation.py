import numpy as np
import pandas as pd
import pytest
from pydantic import ValidationError

from advtext.augmentation import (
    Augmenter,
    EasyDataAugmenter,
    augment_dataset,
    augment_frame,
    build_augmenter,
    charswap_augmenter,
    embedding_augmenter,
)
from advtext.constraints import RepeatModification
from advtext.core.errors import DatasetError, UnknownComponentError
from advtext.datasets.dataset import Example
from advtext.models.attacked_text import AttackedText
from advtext.schemas.augmentation import AugmenterConfig
from advtext.transformations import WordSwapWordNet
from advtext.utils.metrics import levenshtein

TEN_WORDS = "good great wonderful bad awful boring movie story acting really"


def thesaurus_augmenter(resources, **options):
    return Augmenter(WordSwapWordNet(resources.thesaurus), [RepeatModification()], **options)


@pytest.mark.parametrize("pct, changed", [(0.1, 1), (0.05, 1), (0.25, 3), (1.0, 10)])
def test_swaps_rounded_share_of_words(resources, pct, changed):
    original = AttackedText(TEN_WORDS)
    augmenter = thesaurus_augmenter(resources, pct_words_to_swap=pct, transformations_per_example=3)
    outputs = augmenter.augment_text(original, np.random.default_rng(0))
    assert outputs
    for output in outputs:
        assert original.num_words_diff(output) == changed


def test_outputs_are_distinct_and_bounded(resources):
    augmenter = thesaurus_augmenter(resources, transformations_per_example=2)
    outputs = augmenter.augment(TEN_WORDS)
    assert 0 < len(outputs) <= 2
    assert len(set(outputs)) == len(outputs)
    assert TEN_WORDS not in outputs


def test_augmentation_is_seeded(resources):
    augmenter = thesaurus_augmenter(resources, transformations_per_example=3)
    assert augmenter.augment(TEN_WORDS, np.random.default_rng(5)) == augmenter.augment(TEN_WORDS, np.random.default_rng(5))


def test_text_without_candidates_gets_nothing(resources):
    assert thesaurus_augmenter(resources).augment("zebra quokka") == []


def test_eda_on_single_word_only_replaces_synonyms(resources):
    outputs = EasyDataAugmenter(resources, transformations_per_example=4).augment("good")
    assert len(outputs) == 1
    assert outputs[0] in {"fine", "nice", "decent"}


def test_eda_output_count(resources):
    outputs = EasyDataAugmenter(resources, transformations_per_example=4).augment("the movie was really good")
    assert 0 < len(outputs) <= 4


def test_charswap_changes_one_word_by_a_character(resources):
    text = "the movie was really wonderful"
    for output in charswap_augmenter(resources, transformations_per_example=3).augment(text):
        assert 0 < levenshtein(text, output) <= 2


def test_embedding_augmenter_respects_stopwords(resources):
    outputs = embedding_augmenter(resources, transformations_per_example=3).augment("the movie was good")
    assert outputs
    for output in outputs:
        words = AttackedText(output).words
        assert (words[0], words[2]) == ("the", "was")


def test_invalid_options(resources):
    with pytest.raises(ValueError):
        thesaurus_augmenter(resources, pct_words_to_swap=0.0)
    with pytest.raises(ValueError):
        thesaurus_augmenter(resources, transformations_per_example=0)


def test_config_reads_percentages():
    assert AugmenterConfig(pct_words_to_swap=10).pct_words_to_swap == pytest.approx(0.1)
    assert AugmenterConfig(pct_words_to_swap=0.3).pct_words_to_swap == pytest.approx(0.3)
    with pytest.raises(ValidationError):
        AugmenterConfig(pct_words_to_swap=0)


def test_unknown_augmentation_recipe(resources):
    with pytest.raises(UnknownComponentError):
        build_augmenter(AugmenterConfig(recipe="paraphrase"), resources)


def test_augment_dataset_copies_labels(resources, dataset):
    source = dataset[:10]
    augmenter = build_augmenter(AugmenterConfig(recipe="embedding", transformations_per_example=2), resources)
    augmented = augment_dataset(source, augmenter)
    expected = []
    for index, example in enumerate(source):
        expected.append(example)
        rng = np.random.default_rng([augmenter.seed, index])
        expected.extend(Example(t.text, example.output) for t in augmenter.augment_text(example.attacked_text(), rng))
    assert augmented.examples == expected
    assert 10 < len(augmented) <= 30


def test_augment_dataset_without_originals(resources, dataset):
    source = dataset[:5]
    augmented = augment_dataset(source, thesaurus_augmenter(resources, transformations_per_example=2), include_original=False)
    assert 0 < len(augmented) <= 10
    assert set(augmented.outputs) <= set(source.outputs)


def test_augment_frame_copies_other_columns(resources):
    frame = pd.DataFrame({"id": [7, 8], "text": ["the movie was good", "it was bad"], "label": [1, 0]})
    augmented = augment_frame(frame, "text", thesaurus_augmenter(resources, transformations_per_example=2))
    assert list(augmented.columns) == ["id", "text", "label"]
    assert augmented.iloc[0].tolist() == [7, "the movie was good", 1]
    for _, row in augmented.iterrows():
        assert (row["id"], row["label"]) in {(7, 1), (8, 0)}
    assert len(augmented) > 2


def test_augment_frame_needs_column(resources):
    with pytest.raises(DatasetError):
        augment_frame(pd.DataFrame({"sentence": ["a"]}), "text", thesaurus_augmenter(resources))

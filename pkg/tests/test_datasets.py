from collections import OrderedDict

import pytest

from advtext.core.errors import DatasetError
from advtext.datasets.dataset import Dataset, Example, TaskType
from advtext.datasets.toy import toy_dataset, toy_translation_dataset, toy_translator


def write(tmp_path, name, content):
    path = tmp_path / name
    path.write_text(content, encoding="utf-8")
    return str(path)


def test_single_text_csv(tmp_path):
    dataset = Dataset.from_csv(write(tmp_path, "reviews.csv", 'text,label\n"good, really",1\nbad,0\n'))
    assert dataset.task == TaskType.CLASSIFICATION
    assert dataset.examples == [Example("good, really", 1), Example("bad", 0)]
    assert dataset.num_labels == 2
    assert dataset.name == "reviews.csv"


def test_premise_hypothesis_tsv(tmp_path):
    dataset = Dataset.from_csv(write(tmp_path, "pairs.tsv", "premise\thypothesis\tlabel\nit rains\tit is wet\t2\n"))
    example = dataset[0]
    assert example.input == OrderedDict([("premise", "it rains"), ("hypothesis", "it is wet")])
    assert example.output == 2
    assert dataset.input_columns == ("premise", "hypothesis")
    assert example.attacked_text().column_labels == ["premise", "hypothesis"]


def test_text_pair_columns(tmp_path):
    dataset = Dataset.from_csv(write(tmp_path, "pairs.csv", "label,text2,text\n0,second,first\n"))
    assert dataset[0].input == OrderedDict([("text", "first"), ("text2", "second")])


def test_text_to_text_csv(tmp_path):
    dataset = Dataset.from_csv(write(tmp_path, "mt.csv", "source,reference\nthe movie,le film\n"))
    assert dataset.task == TaskType.TEXT_TO_TEXT
    assert dataset.examples == [Example("the movie", "le film")]


@pytest.mark.parametrize(
    "content",
    [
        "sentence,label\nhello,1\n",
        "text\nhello\n",
        "text,label\nhello,positive\n",
        "text,label\nhello,-1\n",
        "",
    ],
)
def test_malformed_files(tmp_path, content):
    with pytest.raises(DatasetError):
        Dataset.from_csv(write(tmp_path, "bad.csv", content))


def test_missing_file(tmp_path):
    with pytest.raises(DatasetError):
        Dataset.from_csv(str(tmp_path / "absent.csv"))


def test_csv_round_trip(tmp_path):
    original = toy_dataset(20)
    path = str(tmp_path / "toy.csv")
    original.to_csv(path)
    assert Dataset.from_csv(path).examples == original.examples


def test_translation_round_trip(tmp_path):
    original = toy_translation_dataset(5)
    path = str(tmp_path / "mt.csv")
    original.to_csv(path)
    restored = Dataset.from_csv(path)
    assert restored.task == TaskType.TEXT_TO_TEXT
    assert restored.examples == original.examples


def test_slicing_keeps_metadata():
    dataset = toy_dataset(10)
    head = dataset[:4]
    assert isinstance(head, Dataset)
    assert len(head) == 4
    assert head.label_names == dataset.label_names
    assert isinstance(dataset[0], Example)


def test_toy_corpus_is_balanced_and_seeded():
    first, second = toy_dataset(100), toy_dataset(100)
    assert first.examples == second.examples
    assert sum(first.outputs) == 50


def test_toy_translation_references_are_translator_outputs():
    dataset = toy_translation_dataset(5)
    assert dataset.outputs == toy_translator().translate(dataset.texts)

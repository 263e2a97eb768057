from typing import Dict, Sequence

import numpy as np
import pytest

from advtext.datasets.toy import toy_dataset, toy_model, toy_resources
from advtext.resources.embeddings import EmbeddingStore
from advtext.victims.linear import LinearTextClassifier


def word_model(word_weights: Dict[str, Sequence[float]], bias: Sequence[float] = None) -> LinearTextClassifier:
    """Linear classifier over whole-word features only, with hand-set weights."""
    vocabulary = list(word_weights)
    num_labels = len(next(iter(word_weights.values())))
    weights = np.array([word_weights[w] for w in vocabulary], dtype=np.float64).T
    return LinearTextClassifier(
        vocabulary,
        [str(i) for i in range(num_labels)],
        weights=weights,
        bias=bias,
        num_buckets=0,
    )


@pytest.fixture(scope="session")
def resources():
    return toy_resources()


@pytest.fixture(scope="session")
def victim():
    return toy_model()


@pytest.fixture(scope="session")
def dataset():
    return toy_dataset()


@pytest.fixture
def sentiment_model():
    return word_model({"good": [0.0, 2.0], "bad": [2.0, 0.0]})


@pytest.fixture
def tiny_store():
    return EmbeddingStore(["a", "b", "c"], np.array([[1.0, 0.0], [0.9, 0.1], [0.0, 1.0]]))

import threading
from abc import ABC, abstractmethod
from typing import Callable, List, Optional, Sequence, Union

import numpy as np


class ClassifierModel(ABC):
    """Victim returning one probability vector per input text."""

    model_id: str = "classifier"
    is_white_box: bool = False

    @property
    @abstractmethod
    def num_labels(self) -> int:
        ...

    @abstractmethod
    def predict_proba(self, texts: Sequence[str]) -> np.ndarray:
        """Array of shape (len(texts), num_labels); rows sum to one."""

    def __call__(self, texts: Sequence[str]) -> np.ndarray:
        return self.predict_proba(texts)


class TextToTextModel(ABC):
    model_id: str = "text-to-text"
    is_white_box: bool = False

    @abstractmethod
    def translate(self, texts: Sequence[str]) -> List[str]:
        ...

    def __call__(self, texts: Sequence[str]) -> List[str]:
        return self.translate(texts)


VictimModel = Union[ClassifierModel, TextToTextModel]


class FunctionClassifier(ClassifierModel):
    """Adapts a plain `texts -> probabilities` callable."""

    def __init__(self, fn: Callable[[Sequence[str]], np.ndarray], num_labels: int, model_id: str = "function"):
        self._fn = fn
        self._num_labels = num_labels
        self.model_id = model_id

    @property
    def num_labels(self) -> int:
        return self._num_labels

    def predict_proba(self, texts: Sequence[str]) -> np.ndarray:
        return np.asarray(self._fn(list(texts)), dtype=np.float64).reshape(len(texts), self._num_labels)


class CountingModel:
    """Counts the batch elements sent to a wrapped victim."""

    def __init__(self, model: VictimModel):
        self.model = model
        self.calls = 0
        self._lock = threading.Lock()

    def __getattr__(self, name):
        return getattr(self.model, name)

    def _count(self, n: int) -> None:
        with self._lock:
            self.calls += n

    def predict_proba(self, texts: Sequence[str]) -> np.ndarray:
        self._count(len(texts))
        return self.model.predict_proba(texts)

    def translate(self, texts: Sequence[str]) -> List[str]:
        self._count(len(texts))
        return self.model.translate(texts)

    def __call__(self, texts: Sequence[str]):
        self._count(len(texts))
        return self.model(texts)

    def reset(self, value: Optional[int] = 0) -> None:
        with self._lock:
            self.calls = value or 0


def is_classifier(model) -> bool:
    inner = model.model if isinstance(model, CountingModel) else model
    return isinstance(inner, ClassifierModel)

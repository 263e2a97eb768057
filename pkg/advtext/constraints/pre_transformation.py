from typing import Iterable, List, Optional, Set

from advtext.constraints.base import PreTransformationConstraint
from advtext.models.attacked_text import AttackedText
from advtext.resources.bundle import default_stopwords
from advtext.resources.lexicons import StopwordSet


class StopwordModification(PreTransformationConstraint):
    def __init__(self, stopwords: Optional[StopwordSet] = None):
        self.stopwords = stopwords if stopwords is not None else default_stopwords()

    @classmethod
    def from_params(cls, params, context):
        return cls(stopwords=context.resources.stopwords, **params)

    def _get_modifiable_indices(self, attacked_text: AttackedText) -> Set[int]:
        return {i for i, word in enumerate(attacked_text.words) if word not in self.stopwords}


class RepeatModification(PreTransformationConstraint):
    """Words already perturbed stay as they are."""

    def _get_modifiable_indices(self, attacked_text: AttackedText) -> Set[int]:
        return set(range(attacked_text.num_words)) - attacked_text.modified_indices


class MinWordLength(PreTransformationConstraint):
    def __init__(self, min_length: int = 4):
        self.min_length = min_length

    def _get_modifiable_indices(self, attacked_text: AttackedText) -> Set[int]:
        return {i for i, word in enumerate(attacked_text.words) if len(word) >= self.min_length}

    def extra_repr_keys(self) -> List[str]:
        return ["min_length"]


class MaxWordIndexModification(PreTransformationConstraint):
    def __init__(self, max_length: int):
        self.max_length = max_length

    def _get_modifiable_indices(self, attacked_text: AttackedText) -> Set[int]:
        return set(range(min(self.max_length, attacked_text.num_words)))

    def extra_repr_keys(self) -> List[str]:
        return ["max_length"]


class InputColumnModification(PreTransformationConstraint):
    """Leaves whole input columns (e.g. the premise) untouched."""

    def __init__(
        self,
        matching_column_labels: Iterable[str] = ("premise", "hypothesis"),
        columns_to_ignore: Iterable[str] = ("premise",),
    ):
        self.matching_column_labels = list(matching_column_labels)
        self.columns_to_ignore = set(columns_to_ignore)

    def _get_modifiable_indices(self, attacked_text: AttackedText) -> Set[int]:
        indices = set(range(attacked_text.num_words))
        if list(attacked_text.column_labels) != self.matching_column_labels:
            return indices
        for label in self.columns_to_ignore:
            indices -= set(attacked_text.column_word_indices(label))
        return indices

    def extra_repr_keys(self) -> List[str]:
        return ["matching_column_labels", "columns_to_ignore"]

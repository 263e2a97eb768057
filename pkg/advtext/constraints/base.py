from abc import ABC, abstractmethod
from typing import List, Sequence, Set

from advtext.core.component import Component
from advtext.models.attacked_text import AttackedText


class Constraint(Component, ABC):
    """Validity predicate over a (reference, candidate) pair.

    The reference is the original input when `compare_against_original`
    is true, otherwise the text the candidate was generated from.
    """

    def __init__(self, compare_against_original: bool = True):
        self.compare_against_original = compare_against_original

    def check(self, reference: AttackedText, candidate: AttackedText) -> bool:
        return self._check_constraint(reference, candidate)

    def call_many(self, candidates: Sequence[AttackedText], reference: AttackedText) -> List[AttackedText]:
        return [c for c in candidates if self.check(reference, c)]

    @abstractmethod
    def _check_constraint(self, reference: AttackedText, candidate: AttackedText) -> bool:
        ...

    def extra_repr_keys(self) -> List[str]:
        return ["compare_against_original"]


class PreTransformationConstraint(Component, ABC):
    """Restricts which word indices a transformation may touch."""

    def __call__(self, attacked_text: AttackedText) -> Set[int]:
        return self._get_modifiable_indices(attacked_text)

    @abstractmethod
    def _get_modifiable_indices(self, attacked_text: AttackedText) -> Set[int]:
        ...


def modifiable_indices(attacked_text: AttackedText, constraints: Sequence[PreTransformationConstraint]) -> Set[int]:
    indices = set(range(attacked_text.num_words))
    for constraint in constraints:
        indices &= constraint(attacked_text)
    return indices

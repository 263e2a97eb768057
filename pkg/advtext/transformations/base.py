from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Union

import numpy as np

from advtext.constraints.base import PreTransformationConstraint, modifiable_indices
from advtext.core.component import Component, add_indent
from advtext.core.errors import TextEditError
from advtext.models.attacked_text import AttackedText


@dataclass
class TransformationContext:
    """Per-example state a transformation may draw on."""

    rng: np.random.Generator = field(default_factory=lambda: np.random.default_rng(0))
    ground_truth_output: Union[int, str, None] = None


class Transformation(Component, ABC):
    """Produces candidate perturbations of a text.

    Candidates are deduplicated by text, never equal the input, and only
    touch the permitted indices.
    """

    is_black_box = True
    preserves_word_count = True

    def __call__(
        self,
        attacked_text: AttackedText,
        indices_to_modify: Optional[Iterable[int]] = None,
        pre_transformation_constraints: Sequence[PreTransformationConstraint] = (),
        context: Optional[TransformationContext] = None,
    ) -> List[AttackedText]:
        indices = modifiable_indices(attacked_text, pre_transformation_constraints)
        if indices_to_modify is not None:
            indices &= set(indices_to_modify)
        context = context or TransformationContext()
        return dedupe(self._get_transformations(attacked_text, sorted(indices), context), attacked_text)

    @abstractmethod
    def _get_transformations(
        self, attacked_text: AttackedText, indices_to_modify: List[int], context: TransformationContext
    ) -> List[AttackedText]:
        ...


def dedupe(candidates: Iterable[AttackedText], source: Optional[AttackedText] = None) -> List[AttackedText]:
    seen = {source.text} if source is not None else set()
    unique = []
    for candidate in candidates:
        if candidate.text not in seen:
            seen.add(candidate.text)
            unique.append(candidate)
    return unique


class WordSwap(Transformation):
    """Replaces one word at a time with proposals from `_get_replacement_words`."""

    def _get_replacement_words(
        self, word: str, index: int, attacked_text: AttackedText, context: TransformationContext
    ) -> List[str]:
        raise NotImplementedError

    def _get_transformations(self, attacked_text, indices_to_modify, context):
        candidates = []
        for i in indices_to_modify:
            word = attacked_text.words[i]
            for replacement in self._get_replacement_words(word, i, attacked_text, context):
                if replacement == word:
                    continue
                try:
                    candidates.append(attacked_text.replace_word_at_index(i, replacement))
                except TextEditError:
                    continue
        return candidates


class CompositeTransformation(Transformation):
    """Union of member outputs, in member order."""

    def __init__(self, transformations: Sequence[Transformation]):
        self.transformations = list(transformations)

    @property
    def is_black_box(self) -> bool:
        return all(t.is_black_box for t in self.transformations)

    @property
    def preserves_word_count(self) -> bool:
        return all(t.preserves_word_count for t in self.transformations)

    def _get_transformations(self, attacked_text, indices_to_modify, context):
        candidates = []
        for transformation in self.transformations:
            candidates.extend(transformation._get_transformations(attacked_text, indices_to_modify, context))
        return candidates

    def __repr__(self) -> str:
        lines = [add_indent(f"({i}): {t}", 2) for i, t in enumerate(self.transformations)]
        lines.append(")")
        return "CompositeTransformation(" + add_indent("\n" + "\n".join(lines), 2)

    __str__ = __repr__

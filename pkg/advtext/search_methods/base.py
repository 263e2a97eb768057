from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from advtext.core.component import Component
from advtext.models.attacked_text import AttackedText
from advtext.models.results import GoalFunctionResult


def best_result(results: Sequence[GoalFunctionResult]) -> GoalFunctionResult:
    """First result with the highest (succeeded, score) key."""
    best = results[0]
    for result in results[1:]:
        if result.rank_key() > best.rank_key():
            best = result
    return best


@dataclass
class PopulationMember:
    """A candidate solution of a population-based search."""

    attacked_text: AttackedText
    result: GoalFunctionResult
    attributes: Dict[str, Any] = field(default_factory=dict)

    @property
    def score(self) -> float:
        return self.result.score

    @property
    def words(self) -> Tuple[str, ...]:
        return self.attacked_text.words


class SearchMethod(Component, ABC):
    """Strategy for traversing the transformation space.

    `Attack` binds the hooks before each search: `get_transformations`,
    `get_goal_results`, `filter_transformations`, `get_indices_to_order`,
    plus the victim `model` and the per-example `rng`.
    """

    get_transformations: Callable[..., List[AttackedText]]
    get_goal_results: Callable[..., Tuple[List[GoalFunctionResult], bool]]
    filter_transformations: Callable[..., List[AttackedText]]
    get_indices_to_order: Callable[[AttackedText], Set[int]]
    rng: np.random.Generator
    model: Any = None
    ground_truth_output: Any = None

    def __call__(self, initial_result: GoalFunctionResult) -> GoalFunctionResult:
        return self.perform_search(initial_result)

    @abstractmethod
    def perform_search(self, initial_result: GoalFunctionResult) -> GoalFunctionResult:
        ...

    def check_transformation_compatibility(self, transformation) -> bool:
        return True

    @property
    def is_black_box(self) -> bool:
        return True


def selection_probabilities(scores: Sequence[float], temp: float, mask: Optional[np.ndarray] = None) -> np.ndarray:
    """softmax(score / temp); masked-out members get probability 0."""
    logits = np.asarray(scores, dtype=np.float64) / temp
    if mask is not None:
        logits = np.where(mask, logits, -np.inf)
    logits = logits - np.max(logits)
    weights = np.exp(logits)
    return weights / weights.sum()

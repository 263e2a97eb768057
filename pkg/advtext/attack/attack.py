import copy
import logging
import time
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Union

import numpy as np

from advtext.attack.cache import ResultCache
from advtext.constraints.base import Constraint, PreTransformationConstraint, modifiable_indices
from advtext.core.component import add_indent
from advtext.core.config import settings
from advtext.core.errors import CapabilityError
from advtext.goal_functions.base import GoalFunction
from advtext.models.attacked_text import AttackedText
from advtext.models.results import AttackResult, AttackStatus, GoalStatus
from advtext.search_methods.base import SearchMethod
from advtext.transformations.base import Transformation, TransformationContext

logger = logging.getLogger(__name__)


class Attack:
    """A goal function, constraints, a transformation and a search method.

    `constraints` may mix pairwise and pre-transformation constraints;
    pre-transformation ones restrict the indices handed to the
    transformation, pairwise ones filter its output in the given order,
    stopping at the first failure.
    """

    def __init__(
        self,
        goal_function: GoalFunction,
        constraints: Sequence[Union[Constraint, PreTransformationConstraint]],
        transformation: Transformation,
        search_method: SearchMethod,
        use_cache: bool = settings.USE_CACHE,
    ):
        self.goal_function = goal_function
        self.transformation = transformation
        self.search_method = search_method
        self.constraints: List[Constraint] = [c for c in constraints if not isinstance(c, PreTransformationConstraint)]
        self.pre_transformation_constraints: List[PreTransformationConstraint] = [
            c for c in constraints if isinstance(c, PreTransformationConstraint)
        ]
        if not search_method.check_transformation_compatibility(transformation):
            raise CapabilityError(
                f"{type(search_method).__name__} cannot be used with {type(transformation).__name__}: "
                "it needs a transformation that keeps the word count"
            )
        if not self.is_black_box and not getattr(goal_function.model, "is_white_box", False):
            raise CapabilityError("This attack needs a white-box victim")
        self.use_cache = use_cache
        self.cache = ResultCache(enabled=use_cache)
        self._context = TransformationContext()
        self._bind_search_method()

    @property
    def is_black_box(self) -> bool:
        return self.transformation.is_black_box and self.search_method.is_black_box

    def _bind_search_method(self) -> None:
        search = self.search_method
        search.get_transformations = self.get_transformations
        search.get_goal_results = self.goal_function.get_results
        search.filter_transformations = self.filter_transformations
        search.get_indices_to_order = self.get_indices_to_order
        search.model = self.goal_function.model

    def clone(self) -> "Attack":
        """Independent copy for another worker: fresh caches and counters, shared read-only components."""
        clone = copy.copy(self)
        clone.goal_function = self.goal_function.clone()
        clone.search_method = copy.copy(self.search_method)
        clone.cache = ResultCache(enabled=self.use_cache)
        clone._context = TransformationContext()
        clone._bind_search_method()
        return clone

    # Candidate generation

    def get_indices_to_order(self, attacked_text: AttackedText):
        return modifiable_indices(attacked_text, self.pre_transformation_constraints)

    def get_transformations(
        self,
        current_text: AttackedText,
        original_text: Optional[AttackedText] = None,
        indices_to_modify: Optional[Iterable[int]] = None,
    ) -> List[AttackedText]:
        """Transformation output that passes every constraint."""
        candidates = self.transformation(
            current_text,
            indices_to_modify=indices_to_modify,
            pre_transformation_constraints=self.pre_transformation_constraints,
            context=self._context,
        )
        return self.filter_transformations(candidates, current_text, original_text)

    def filter_transformations(
        self,
        candidates: Sequence[AttackedText],
        current_text: AttackedText,
        original_text: Optional[AttackedText] = None,
    ) -> List[AttackedText]:
        original_text = original_text if original_text is not None else current_text
        return [c for c in candidates if self._passes(c, current_text, original_text)]

    def _passes(self, candidate: AttackedText, current_text: AttackedText, original_text: AttackedText) -> bool:
        for position, constraint in enumerate(self.constraints):
            reference = original_text if constraint.compare_against_original else current_text
            key = (position, reference.text, reference.original_indices, candidate.text, candidate.original_indices)
            if not self.cache.check(key, lambda: constraint.check(reference, candidate)):
                return False
        return True

    # Running

    def attack(
        self,
        example: Union[AttackedText, str, Mapping[str, str]],
        ground_truth_output,
        rng: Optional[np.random.Generator] = None,
    ) -> AttackResult:
        attacked_text = example if isinstance(example, AttackedText) else AttackedText(example)
        rng = rng if rng is not None else np.random.default_rng(settings.DEFAULT_SEED)
        self._context = TransformationContext(rng=rng, ground_truth_output=ground_truth_output)
        self.search_method.rng = rng
        self.search_method.ground_truth_output = ground_truth_output
        start = time.perf_counter()
        initial_result, _ = self.goal_function.init_attack_example(attacked_text, ground_truth_output)
        if initial_result.status == GoalStatus.SKIPPED:
            return AttackResult(
                initial_result, initial_result, AttackStatus.SKIPPED,
                self.goal_function.num_queries, time.perf_counter() - start,
            )
        final_result = self.search_method(initial_result)
        if final_result.succeeded:
            status = AttackStatus.SUCCESSFUL
        elif self.goal_function.maximizable:
            status = AttackStatus.MAXIMIZED
        else:
            status = AttackStatus.FAILED
        result = AttackResult(
            initial_result, final_result, status, self.goal_function.num_queries, time.perf_counter() - start
        )
        logger.debug("%s after %d queries: %r", status.value, result.num_queries, final_result.attacked_text.text)
        return result

    def cache_stats(self) -> Dict[str, float]:
        return {
            "goal_cache_hits": self.goal_function.cache_hits,
            "victim_calls": self.goal_function.victim_calls,
            "goal_cache_hit_rate": self.goal_function.cache_hit_rate,
            "constraint_cache_hits": self.cache.hits,
            "constraint_cache_misses": self.cache.misses,
        }

    # Prototype

    def __repr__(self) -> str:
        lines = [
            add_indent(f"(search_method): {self.search_method}", 2),
            add_indent(f"(goal_function):  {self.goal_function}", 2),
            add_indent(f"(transformation):  {self.transformation}", 2),
        ]
        constraints = [
            add_indent(f"({i}): {c}", 2)
            for i, c in enumerate(self.constraints + self.pre_transformation_constraints)
        ]
        constraints_str = add_indent("\n" + "\n".join(constraints), 2) if constraints else "None"
        lines.append(add_indent(f"(constraints): {constraints_str}", 2))
        lines.append(add_indent(f"(is_black_box):  {self.is_black_box}", 2))
        return "Attack(\n  " + "\n  ".join(lines) + "\n)"

    __str__ = __repr__

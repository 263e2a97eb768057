import copy
import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from advtext.core.component import Component
from advtext.core.config import settings
from advtext.models.attacked_text import AttackedText
from advtext.models.results import GoalFunctionResult, GoalStatus

logger = logging.getLogger(__name__)


class GoalFunction(Component, ABC):
    """Scores victim outputs against an attack goal and counts queries.

    `num_queries` counts every text the search asks about (logical
    queries, which the query budget limits); `victim_calls` counts the
    texts actually sent to the victim after the output cache. With the
    cache disabled the two are equal.
    """

    maximizable = False

    def __init__(
        self,
        model,
        query_budget: Optional[int] = settings.QUERY_BUDGET,
        use_cache: bool = settings.USE_CACHE,
        batch_size: int = 32,
    ):
        self.model = model
        self.query_budget = query_budget
        self.use_cache = use_cache
        self.batch_size = batch_size
        self._cache: Dict[str, Any] = {}
        self.cache_hits = 0
        self.victim_calls = 0
        self.num_queries = 0
        self.initial_attacked_text: Optional[AttackedText] = None
        self.ground_truth_output: Union[int, str, None] = None

    @classmethod
    def from_params(cls, params, context):
        return cls(context.model, query_budget=context.query_budget, use_cache=context.use_cache, **params)

    def clone(self) -> "GoalFunction":
        """Same configuration, fresh cache and counters."""
        clone = copy.copy(self)
        clone._cache = {}
        clone.cache_hits = clone.victim_calls = clone.num_queries = 0
        return clone

    def init_attack_example(
        self, attacked_text: AttackedText, ground_truth_output: Union[int, str]
    ) -> Tuple[GoalFunctionResult, bool]:
        self.initial_attacked_text = attacked_text
        self.ground_truth_output = ground_truth_output
        self.num_queries = 0
        self._validate_ground_truth(ground_truth_output)
        results, search_over = self.get_results([attacked_text], check_skip=True)
        return results[0], search_over

    def get_result(self, attacked_text: AttackedText) -> Tuple[Optional[GoalFunctionResult], bool]:
        results, search_over = self.get_results([attacked_text])
        return (results[0] if results else None), search_over

    def get_results(
        self, attacked_texts: Sequence[AttackedText], check_skip: bool = False
    ) -> Tuple[List[GoalFunctionResult], bool]:
        """Evaluate texts, truncating the batch at the query budget."""
        if self.query_budget is not None:
            attacked_texts = attacked_texts[: max(self.query_budget - self.num_queries, 0)]
        self.num_queries += len(attacked_texts)
        outputs = self._call_model(attacked_texts)
        if check_skip and outputs:
            self._on_initial_output(outputs[0])
        results = [self._build_result(t, out, check_skip) for t, out in zip(attacked_texts, outputs)]
        search_over = self.query_budget is not None and self.num_queries >= self.query_budget
        return results, search_over

    def evaluate_output(self, raw_output: Any, attacked_text: AttackedText) -> GoalFunctionResult:
        """Score an output that was obtained elsewhere; no query is counted."""
        self._validate_output(raw_output)
        return self._build_result(attacked_text, raw_output, check_skip=False)

    def _build_result(self, attacked_text: AttackedText, raw_output: Any, check_skip: bool) -> GoalFunctionResult:
        return GoalFunctionResult(
            attacked_text=attacked_text,
            raw_output=raw_output,
            output=self._displayed_output(raw_output),
            score=self._get_score(raw_output, attacked_text),
            status=self._status(raw_output, attacked_text, check_skip),
            num_queries=self.num_queries,
            ground_truth_output=self.ground_truth_output,
        )

    def _status(self, raw_output: Any, attacked_text: AttackedText, check_skip: bool) -> GoalStatus:
        if check_skip and self._should_skip(raw_output, attacked_text):
            return GoalStatus.SKIPPED
        if self._is_goal_complete(raw_output, attacked_text):
            return GoalStatus.SUCCEEDED
        if self.maximizable:
            return GoalStatus.MAXIMIZING
        return GoalStatus.SEARCHING

    def _call_model(self, attacked_texts: Sequence[AttackedText]) -> List[Any]:
        keys = [t.text for t in attacked_texts]
        if self.use_cache:
            missing = list(dict.fromkeys(k for k in keys if k not in self._cache))
            self.cache_hits += len(keys) - len(missing)
        else:
            missing = keys
        outputs: List[Any] = []
        for start in range(0, len(missing), self.batch_size):
            batch = missing[start:start + self.batch_size]
            self.victim_calls += len(batch)
            batch_outputs = list(self.model(batch))
            for output in batch_outputs:
                self._validate_output(output)
            outputs.extend(batch_outputs)
        if not self.use_cache:
            return outputs
        self._cache.update(zip(missing, outputs))
        return [self._cache[k] for k in keys]

    @property
    def cache_hit_rate(self) -> float:
        lookups = self.cache_hits + self.victim_calls
        return self.cache_hits / lookups if lookups else 0.0

    def _on_initial_output(self, raw_output: Any) -> None:
        pass

    def _validate_ground_truth(self, ground_truth_output) -> None:
        pass

    def _validate_output(self, raw_output: Any) -> None:
        pass

    def _should_skip(self, raw_output: Any, attacked_text: AttackedText) -> bool:
        return self._is_goal_complete(raw_output, attacked_text)

    @abstractmethod
    def _is_goal_complete(self, raw_output: Any, attacked_text: AttackedText) -> bool:
        ...

    @abstractmethod
    def _get_score(self, raw_output: Any, attacked_text: AttackedText) -> float:
        ...

    def _displayed_output(self, raw_output: Any):
        return raw_output

    def extra_repr_keys(self) -> List[str]:
        return ["maximizable"] if self.maximizable else []

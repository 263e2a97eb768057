from typing import List

from advtext.models.results import GoalFunctionResult
from advtext.search_methods.base import SearchMethod, best_result
from advtext.transformations.base import dedupe


class BeamSearch(SearchMethod):
    """Keeps the `beam_width` best texts and extends each at one unmodified index per step."""

    def __init__(self, beam_width: int = 8):
        if beam_width < 1:
            raise ValueError("beam_width must be positive")
        self.beam_width = beam_width

    def perform_search(self, initial_result: GoalFunctionResult) -> GoalFunctionResult:
        original_text = initial_result.attacked_text
        beam = [original_text]
        best = initial_result
        search_over = False
        while not best.succeeded and not search_over:
            candidates = []
            for text in beam:
                unmodified = [i for i in range(text.num_words) if i not in text.modified_indices]
                candidates.extend(self.get_transformations(text, original_text, indices_to_modify=unmodified))
            candidates = dedupe(candidates)
            if not candidates:
                break
            results, search_over = self.get_goal_results(candidates)
            if not results:
                break
            step_best = best_result(results)
            if step_best.rank_key() > best.rank_key():
                best = step_best
            # stable sort keeps generation order among equal scores
            ranked = sorted(range(len(results)), key=lambda k: -results[k].score)
            beam = [results[k].attacked_text for k in ranked[: self.beam_width]]
        return best

    def extra_repr_keys(self) -> List[str]:
        return ["beam_width"]


class GreedySearch(BeamSearch):
    """Beam search with a beam of one."""

    def __init__(self):
        super().__init__(beam_width=1)

    def extra_repr_keys(self) -> List[str]:
        return []

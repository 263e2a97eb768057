import enum
import logging
from typing import List, Sequence, Tuple

import numpy as np

from advtext.core.config import settings
from advtext.core.errors import CapabilityError, UsageError
from advtext.models.attacked_text import AttackedText
from advtext.models.results import GoalFunctionResult
from advtext.search_methods.base import SearchMethod, best_result

logger = logging.getLogger(__name__)


class WirMethod(str, enum.Enum):
    UNK = "unk"
    DELETE = "delete"
    PWWS = "pwws"
    GRADIENT = "gradient"
    RANDOM = "random"


def _softmax(values: np.ndarray) -> np.ndarray:
    if len(values) == 0:
        return values
    exp = np.exp(values - values.max())
    return exp / exp.sum()


class GreedyWordSwapWIR(SearchMethod):
    """Greedy swaps visited in order of decreasing word importance.

    Importance queries are ordinary goal queries and count against the
    query budget; the gradient ranking asks the victim for its input
    gradient instead and costs no queries.
    """

    def __init__(self, wir_method: str = "unk", unk_token: str = settings.UNK_TOKEN):
        try:
            self.wir_method = WirMethod(wir_method).value
        except ValueError:
            raise UsageError(f"Unknown word importance ranking method {wir_method!r}")
        self.unk_token = unk_token

    def _leave_one_out(self, text: AttackedText, indices: Sequence[int], method: str) -> List[AttackedText]:
        if method == WirMethod.DELETE and text.num_words > 1:
            return [text.delete_word_at_index(i) for i in indices]
        return [text.replace_word_at_index(i, self.unk_token) for i in indices]

    def _get_index_order(self, initial_result: GoalFunctionResult) -> Tuple[List[int], bool]:
        """Indices sorted by descending importance, ties to the lower index."""
        text = initial_result.attacked_text
        indices = sorted(self.get_indices_to_order(text))
        if not indices:
            return [], False
        search_over = False
        if self.wir_method == WirMethod.RANDOM:
            return [indices[k] for k in self.rng.permutation(len(indices))], False
        if self.wir_method == WirMethod.GRADIENT:
            if not getattr(self.model, "is_white_box", False):
                raise CapabilityError("Gradient word importance ranking needs a white-box victim")
            importances = np.asarray(self.model.word_importances(text, self.ground_truth_output))[indices]
        elif self.wir_method in (WirMethod.UNK, WirMethod.DELETE):
            results, search_over = self.get_goal_results(self._leave_one_out(text, indices, self.wir_method))
            indices = indices[: len(results)]
            importances = np.array([r.score for r in results])
        else:
            results, search_over = self.get_goal_results(self._leave_one_out(text, indices, WirMethod.DELETE))
            indices = indices[: len(results)]
            saliency = _softmax(np.array([r.score for r in results]))
            gains = np.zeros(len(indices))
            for k, i in enumerate(indices):
                if search_over:
                    indices, saliency, gains = indices[:k], saliency[:k], gains[:k]
                    break
                candidates = self.get_transformations(text, text, indices_to_modify=[i])
                if not candidates:
                    continue
                swap_results, search_over = self.get_goal_results(candidates)
                if swap_results:
                    gains[k] = max(r.score for r in swap_results) - initial_result.score
            importances = saliency * gains
        order = sorted(range(len(indices)), key=lambda k: (-importances[k], indices[k]))
        return [indices[k] for k in order], search_over

    def perform_search(self, initial_result: GoalFunctionResult) -> GoalFunctionResult:
        original_text = initial_result.attacked_text
        index_order, search_over = self._get_index_order(initial_result)
        logger.debug("Word importance order (%s): %s", self.wir_method, index_order)
        current = initial_result
        for original_index in index_order:
            if search_over:
                break
            position = current.attacked_text.current_index_of(original_index)
            if position is None:
                continue
            candidates = self.get_transformations(current.attacked_text, original_text, indices_to_modify=[position])
            if not candidates:
                continue
            results, search_over = self.get_goal_results(candidates)
            if not results:
                break
            best = best_result(results)
            if best.rank_key() > current.rank_key():
                current = best
                if current.succeeded:
                    break
        return current

    @property
    def is_black_box(self) -> bool:
        return self.wir_method != WirMethod.GRADIENT

    def extra_repr_keys(self) -> List[str]:
        return ["wir_method"]

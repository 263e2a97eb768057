from collections import Counter
from typing import List, Optional

from advtext.core.errors import GoalFunctionError
from advtext.goal_functions.base import GoalFunction
from advtext.models.attacked_text import AttackedText
from advtext.utils.metrics import bleu_tokens, sentence_bleu


class TextToTextGoalFunction(GoalFunction):
    """Goals comparing the victim's output with its output on the original text."""

    original_output: Optional[str] = None

    def _on_initial_output(self, raw_output: str) -> None:
        self.original_output = raw_output

    def _validate_output(self, raw_output) -> None:
        if not isinstance(raw_output, str):
            raise GoalFunctionError(f"Expected an output text, got {type(raw_output).__name__}")


def word_overlap(original: str, current: str) -> float:
    """Fraction of the original's words (as a multiset) still present in `current`."""
    original_words = Counter(bleu_tokens(original))
    total = sum(original_words.values())
    if total == 0:
        return 0.0
    return sum((original_words & Counter(bleu_tokens(current))).values()) / total


class NonOverlappingOutput(TextToTextGoalFunction):
    def _is_goal_complete(self, raw_output: str, attacked_text: AttackedText) -> bool:
        return word_overlap(self.original_output, raw_output) == 0.0

    def _get_score(self, raw_output: str, attacked_text: AttackedText) -> float:
        return 1.0 - word_overlap(self.original_output, raw_output)


class MinimizeBleu(TextToTextGoalFunction):
    """Succeeds once BLEU against the original output falls to `target_bleu`."""

    def __init__(self, model, target_bleu: float = 0.0, maximizable: bool = False, **kwargs):
        super().__init__(model, **kwargs)
        self.target_bleu = target_bleu
        self.maximizable = maximizable

    def _is_goal_complete(self, raw_output: str, attacked_text: AttackedText) -> bool:
        return sentence_bleu(raw_output, self.original_output) <= self.target_bleu

    def _get_score(self, raw_output: str, attacked_text: AttackedText) -> float:
        return 1.0 - sentence_bleu(raw_output, self.original_output)

    def extra_repr_keys(self) -> List[str]:
        return ["maximizable", "target_bleu"]

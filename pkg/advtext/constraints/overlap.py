from typing import List, Optional

from advtext.constraints.base import Constraint
from advtext.models.attacked_text import AttackedText
from advtext.utils.metrics import levenshtein, sentence_bleu, sentence_chrf


class LevenshteinEditDistance(Constraint):
    def __init__(self, max_edit_distance: int, compare_against_original: bool = True):
        super().__init__(compare_against_original)
        self.max_edit_distance = max_edit_distance

    def _check_constraint(self, reference: AttackedText, candidate: AttackedText) -> bool:
        return levenshtein(reference.text, candidate.text) <= self.max_edit_distance

    def extra_repr_keys(self) -> List[str]:
        return ["max_edit_distance"] + super().extra_repr_keys()


class MaxWordsPerturbed(Constraint):
    """Bounds the changed word positions by a count and/or an exact ratio."""

    def __init__(
        self,
        max_num_words: Optional[int] = None,
        max_percent: Optional[float] = None,
        compare_against_original: bool = True,
    ):
        super().__init__(compare_against_original)
        if max_num_words is None and max_percent is None:
            raise ValueError("MaxWordsPerturbed needs max_num_words or max_percent")
        self.max_num_words = max_num_words
        self.max_percent = max_percent

    def _check_constraint(self, reference: AttackedText, candidate: AttackedText) -> bool:
        changed = reference.num_words_diff(candidate)
        if self.max_num_words is not None and changed > self.max_num_words:
            return False
        if self.max_percent is not None and reference.num_words:
            return changed / reference.num_words <= self.max_percent
        return True

    def extra_repr_keys(self) -> List[str]:
        keys = []
        if self.max_num_words is not None:
            keys.append("max_num_words")
        if self.max_percent is not None:
            keys.append("max_percent")
        return keys + super().extra_repr_keys()


class BLEU(Constraint):
    """1 - BLEU(candidate, reference) may not exceed `max_bleu_diff`."""

    def __init__(self, max_bleu_diff: float, compare_against_original: bool = True):
        super().__init__(compare_against_original)
        self.max_bleu_diff = max_bleu_diff

    def _check_constraint(self, reference: AttackedText, candidate: AttackedText) -> bool:
        return 1.0 - sentence_bleu(candidate.text, reference.text) <= self.max_bleu_diff

    def extra_repr_keys(self) -> List[str]:
        return ["max_bleu_diff"] + super().extra_repr_keys()


class ChrF(Constraint):
    """1 - chrF(candidate, reference) may not exceed `max_chrf_diff`."""

    def __init__(self, max_chrf_diff: float, compare_against_original: bool = True):
        super().__init__(compare_against_original)
        self.max_chrf_diff = max_chrf_diff

    def _check_constraint(self, reference: AttackedText, candidate: AttackedText) -> bool:
        return 1.0 - sentence_chrf(candidate.text, reference.text) <= self.max_chrf_diff

    def extra_repr_keys(self) -> List[str]:
        return ["max_chrf_diff"] + super().extra_repr_keys()

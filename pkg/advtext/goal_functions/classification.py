from typing import List

import numpy as np

from advtext.core.errors import GoalFunctionError
from advtext.goal_functions.base import GoalFunction
from advtext.models.attacked_text import AttackedText
from advtext.models.results import GoalStatus


class ClassificationGoalFunction(GoalFunction):
    """Goal over probability vectors; argmax ties go to the lowest label."""

    def _validate_output(self, raw_output) -> None:
        output = np.asarray(raw_output, dtype=np.float64)
        num_labels = getattr(self.model, "num_labels", output.shape[-1] if output.ndim else 0)
        if (
            output.ndim != 1
            or len(output) != num_labels
            or not np.all(np.isfinite(output))
            or np.any(output < 0)
            or np.any(output > 1)
            or abs(float(output.sum()) - 1.0) > 1e-6
        ):
            raise GoalFunctionError(f"Malformed score vector {raw_output!r}")

    def _validate_ground_truth(self, ground_truth_output) -> None:
        num_labels = getattr(self.model, "num_labels", None)
        if num_labels is not None and not 0 <= int(ground_truth_output) < num_labels:
            raise GoalFunctionError(f"Label {ground_truth_output} outside 0..{num_labels - 1}")

    def _displayed_output(self, raw_output) -> int:
        return int(np.argmax(raw_output))


class UntargetedClassification(ClassificationGoalFunction):
    """Succeeds once the top label differs from the ground truth."""

    def _is_goal_complete(self, raw_output, attacked_text: AttackedText) -> bool:
        return int(np.argmax(raw_output)) != self.ground_truth_output

    def _get_score(self, raw_output, attacked_text: AttackedText) -> float:
        return 1.0 - float(raw_output[self.ground_truth_output])


class TargetedClassification(ClassificationGoalFunction):
    def __init__(self, model, target_class: int = 0, **kwargs):
        super().__init__(model, **kwargs)
        self.target_class = int(target_class)

    def _validate_ground_truth(self, ground_truth_output) -> None:
        super()._validate_ground_truth(ground_truth_output)
        if int(ground_truth_output) == self.target_class:
            raise GoalFunctionError(f"Target label {self.target_class} equals the ground truth label")

    def _is_goal_complete(self, raw_output, attacked_text: AttackedText) -> bool:
        return int(np.argmax(raw_output)) == self.target_class

    def _get_score(self, raw_output, attacked_text: AttackedText) -> float:
        return float(raw_output[self.target_class])

    def extra_repr_keys(self) -> List[str]:
        return ["target_class"]


class InputReduction(ClassificationGoalFunction):
    """Deletes words for as long as the predicted label stays the ground truth.

    The score is the fraction of original words removed; it never
    succeeds, and a candidate that changes the label scores 0.
    """

    def __init__(self, model, maximizable: bool = True, **kwargs):
        super().__init__(model, **kwargs)
        self.maximizable = maximizable

    def _label_kept(self, raw_output) -> bool:
        return int(np.argmax(raw_output)) == self.ground_truth_output

    def _should_skip(self, raw_output, attacked_text: AttackedText) -> bool:
        return not self._label_kept(raw_output)

    def _is_goal_complete(self, raw_output, attacked_text: AttackedText) -> bool:
        return False

    def _status(self, raw_output, attacked_text: AttackedText, check_skip: bool) -> GoalStatus:
        status = super()._status(raw_output, attacked_text, check_skip)
        if status == GoalStatus.MAXIMIZING and not self._label_kept(raw_output):
            return GoalStatus.SEARCHING
        return status

    def _get_score(self, raw_output, attacked_text: AttackedText) -> float:
        if not self._label_kept(raw_output):
            return 0.0
        original = self.initial_attacked_text.num_words if self.initial_attacked_text else attacked_text.num_words
        if original == 0:
            return 0.0
        return (original - attacked_text.num_words) / original

import enum
from dataclasses import dataclass, field
from typing import Any, Union

from advtext.models.attacked_text import AttackedText


class GoalStatus(str, enum.Enum):
    SUCCEEDED = "succeeded"
    SEARCHING = "searching"
    MAXIMIZING = "maximizing"
    SKIPPED = "skipped"


class AttackStatus(str, enum.Enum):
    SUCCESSFUL = "successful"
    FAILED = "failed"
    SKIPPED = "skipped"
    MAXIMIZED = "maximized"


@dataclass(frozen=True, eq=False)
class GoalFunctionResult:
    """Victim output for one text, scored against the goal."""

    attacked_text: AttackedText
    raw_output: Any
    output: Union[int, str]
    score: float
    status: GoalStatus
    num_queries: int
    ground_truth_output: Union[int, str]

    @property
    def succeeded(self) -> bool:
        return self.status == GoalStatus.SUCCEEDED

    def rank_key(self):
        return (self.succeeded, self.score)


@dataclass(eq=False)
class AttackResult:
    original_result: GoalFunctionResult
    perturbed_result: GoalFunctionResult
    status: AttackStatus
    num_queries: int
    wall_time: float = field(default=0.0, compare=False)

    @property
    def original_text(self) -> AttackedText:
        return self.original_result.attacked_text

    @property
    def perturbed_text(self) -> AttackedText:
        return self.perturbed_result.attacked_text

    @property
    def num_words_changed(self) -> int:
        return self.original_text.num_words_diff(self.perturbed_text)

    @property
    def perturbed_word_percentage(self) -> float:
        if self.original_text.num_words == 0:
            return 0.0
        return 100.0 * self.num_words_changed / self.original_text.num_words

from typing import List, Optional, Union

import numpy as np
from pydantic import BaseModel, StrictInt

from advtext.models.results import AttackResult, AttackStatus

Output = Union[StrictInt, str]


def _plain(value) -> Output:
    return int(value) if isinstance(value, np.integer) else value


CSV_COLUMNS = [
    "original_text",
    "perturbed_text",
    "original_output",
    "perturbed_output",
    "ground_truth",
    "status",
    "num_queries",
]


class AttackRecord(BaseModel):
    """One attacked example as written to result logs."""

    index: int
    original_text: str
    perturbed_text: str
    original_output: Output
    perturbed_output: Output
    ground_truth: Output
    status: AttackStatus
    num_queries: int
    num_words: int
    num_words_changed: int
    perturbed_word_percentage: float
    original_score: float
    perturbed_score: float

    @classmethod
    def from_result(cls, index: int, result: AttackResult) -> "AttackRecord":
        return cls(
            index=index,
            original_text=result.original_text.text,
            perturbed_text=result.perturbed_text.text,
            original_output=_plain(result.original_result.output),
            perturbed_output=_plain(result.perturbed_result.output),
            ground_truth=_plain(result.original_result.ground_truth_output),
            status=result.status,
            num_queries=result.num_queries,
            num_words=result.original_text.num_words,
            num_words_changed=result.num_words_changed,
            perturbed_word_percentage=result.perturbed_word_percentage,
            original_score=result.original_result.score,
            perturbed_score=result.perturbed_result.score,
        )


class AttackSummary(BaseModel):
    """Aggregate statistics; percentages are in [0, 100].

    Skipped examples are left out of the success rate and the query
    average; a success rate with no attempted example is reported as 0.
    """

    total: int
    successful: int
    failed: int
    skipped: int
    maximized: int
    attack_success_rate: float
    average_perturbed_word_percentage: float
    average_num_words: float
    average_num_queries: float
    original_accuracy: float
    accuracy_under_attack: float
    recipe: Optional[str] = None

    @classmethod
    def from_records(cls, records: List[AttackRecord], recipe: Optional[str] = None) -> "AttackSummary":
        counts = {status: 0 for status in AttackStatus}
        for record in records:
            counts[record.status] += 1
        total = len(records)
        attempted = [r for r in records if r.status != AttackStatus.SKIPPED]
        successes = [r for r in records if r.status == AttackStatus.SUCCESSFUL]
        decided = counts[AttackStatus.SUCCESSFUL] + counts[AttackStatus.FAILED]

        def mean(values: List[float]) -> float:
            return sum(values) / len(values) if values else 0.0

        return cls(
            total=total,
            successful=counts[AttackStatus.SUCCESSFUL],
            failed=counts[AttackStatus.FAILED],
            skipped=counts[AttackStatus.SKIPPED],
            maximized=counts[AttackStatus.MAXIMIZED],
            attack_success_rate=100.0 * counts[AttackStatus.SUCCESSFUL] / decided if decided else 0.0,
            average_perturbed_word_percentage=mean([r.perturbed_word_percentage for r in successes]),
            average_num_words=mean([float(r.num_words) for r in records]),
            average_num_queries=mean([float(r.num_queries) for r in attempted]),
            original_accuracy=100.0 * len(attempted) / total if total else 0.0,
            accuracy_under_attack=(
                100.0 * (counts[AttackStatus.FAILED] + counts[AttackStatus.MAXIMIZED]) / total if total else 0.0
            ),
            recipe=recipe,
        )

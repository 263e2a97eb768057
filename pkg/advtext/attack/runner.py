import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from advtext.attack.attack import Attack
from advtext.core.config import settings
from advtext.core.errors import DatasetError
from advtext.datasets.dataset import Dataset, Example
from advtext.models.results import AttackResult
from advtext.schemas.attack import AttackRecord, AttackSummary

logger = logging.getLogger(__name__)


class AttackRun(NamedTuple):
    results: List[AttackResult]
    records: List[AttackRecord]
    summary: AttackSummary


def example_rng(seed: int, index: int) -> np.random.Generator:
    """Independent stream per example, so results do not depend on scheduling."""
    return np.random.default_rng([seed, index])


def iter_attacks(
    attack: Attack,
    examples: Sequence[Tuple[int, Example]],
    seed: int = settings.DEFAULT_SEED,
    num_workers: int = 1,
) -> Iterator[Tuple[int, AttackResult]]:
    """Attack examples in order; with several workers each owns a cloned attack."""
    if num_workers <= 1:
        for index, example in examples:
            yield index, attack.attack(example.attacked_text(), example.output, example_rng(seed, index))
        return

    workers = [attack.clone() for _ in range(num_workers)]
    chunks = [examples[w::num_workers] for w in range(num_workers)]

    def run(worker: int) -> List[Tuple[int, AttackResult]]:
        return [
            (index, workers[worker].attack(example.attacked_text(), example.output, example_rng(seed, index)))
            for index, example in chunks[worker]
        ]

    with ThreadPoolExecutor(max_workers=num_workers) as pool:
        outputs = [item for chunk in pool.map(run, range(num_workers)) for item in chunk]
    yield from sorted(outputs, key=lambda item: item[0])


def attack_dataset(
    attack: Attack,
    dataset: Dataset,
    num_examples: Optional[int] = None,
    seed: int = settings.DEFAULT_SEED,
    num_workers: int = settings.NUM_WORKERS,
    offset: int = 0,
    recipe: Optional[str] = None,
    observers: Sequence = (),
    progress: bool = True,
) -> AttackRun:
    """Attack the first `num_examples` examples and summarise the outcome.

    `observers` receive every result as `observer.log(index, result, record)`
    in example order.
    """
    if len(dataset) == 0:
        raise DatasetError(f"{dataset.name} is empty")
    stop = len(dataset) if num_examples is None else min(len(dataset), offset + num_examples)
    examples = [(i, dataset[i]) for i in range(offset, stop)]
    if not examples:
        raise DatasetError(f"No examples to attack in {dataset.name} from offset {offset}")
    results: List[AttackResult] = []
    records: List[AttackRecord] = []
    stream = iter_attacks(attack, examples, seed=seed, num_workers=num_workers)
    for index, result in tqdm(stream, total=len(examples), disable=not progress, desc="attack"):
        record = AttackRecord.from_result(index, result)
        results.append(result)
        records.append(record)
        for observer in observers:
            observer.log(index, result, record)
    summary = AttackSummary.from_records(records, recipe=recipe)
    logger.info(
        "Attacked %d examples: %d successful, %d failed, %d skipped, %d maximized; success rate %.2f%%",
        summary.total, summary.successful, summary.failed, summary.skipped, summary.maximized,
        summary.attack_success_rate,
    )
    logger.debug("Cache statistics: %s", attack.cache_stats())
    return AttackRun(results, records, summary)

import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from advtext.attack.recipes import build_recipe
from advtext.attack.runner import attack_dataset, iter_attacks
from advtext.augmentation.augmenter import augment_dataset, build_augmenter
from advtext.core.errors import DatasetError
from advtext.datasets.dataset import Dataset, Example, TaskType
from advtext.models.results import AttackStatus
from advtext.resources.bundle import ResourceBundle
from advtext.schemas.augmentation import AugmenterConfig
from advtext.schemas.training import TrainConfig, TrainHistory
from advtext.utils.metrics import sentence_bleu
from advtext.victims.base import is_classifier
from advtext.victims.linear import LinearTextClassifier, accuracy, build_vocabulary, train_classifier

logger = logging.getLogger(__name__)


def _require_classification(dataset: Dataset) -> None:
    if dataset.task != TaskType.CLASSIFICATION:
        raise DatasetError(f"{dataset.name} is not a classification dataset")
    if len(dataset) == 0:
        raise DatasetError(f"{dataset.name} is empty")


def _label_names(dataset: Dataset) -> List[str]:
    return dataset.label_names or [str(i) for i in range(dataset.num_labels)]


def _best_epoch(epochs) -> Optional[int]:
    scored = [m for m in epochs if m.dev_accuracy is not None]
    if not scored:
        return None
    return max(scored, key=lambda m: (m.dev_accuracy, -m.epoch)).epoch


def _training_set(config: TrainConfig, dataset: Dataset, resources: Optional[ResourceBundle]) -> Dataset:
    if not config.augment_recipe:
        return dataset
    augmenter = build_augmenter(
        AugmenterConfig(
            recipe=config.augment_recipe,
            pct_words_to_swap=config.pct_words_to_swap,
            transformations_per_example=config.transformations_per_example,
            seed=config.seed,
        ),
        resources or ResourceBundle(),
    )
    augmented = augment_dataset(dataset, augmenter)
    logger.info("Augmented training set from %d to %d examples", len(dataset), len(augmented))
    return augmented


def evaluate_model(model, dataset: Dataset) -> float:
    """Accuracy for classifiers, mean sentence BLEU for text-to-text victims."""
    if len(dataset) == 0:
        raise DatasetError(f"{dataset.name} is empty")
    if dataset.task == TaskType.CLASSIFICATION:
        if not is_classifier(model):
            raise DatasetError("A classification dataset needs a classifier")
        return accuracy(model, dataset.texts, dataset.outputs)
    hypotheses = model.translate(dataset.texts)
    return float(np.mean([sentence_bleu(h, r) for h, r in zip(hypotheses, dataset.outputs)]))


def accuracy_under_attack(
    model,
    dataset: Dataset,
    recipe: str,
    resources: Optional[ResourceBundle] = None,
    seed: int = 0,
    query_budget: Optional[int] = None,
) -> float:
    """Fraction of examples still classified correctly after the attack."""
    attack = build_recipe(recipe, model, resources, query_budget=query_budget)
    run = attack_dataset(attack, dataset, seed=seed, num_workers=1, recipe=recipe, progress=False)
    return run.summary.accuracy_under_attack / 100.0


def train(
    config: TrainConfig,
    dataset: Dataset,
    dev: Optional[Dataset] = None,
    resources: Optional[ResourceBundle] = None,
) -> Tuple[LinearTextClassifier, TrainHistory]:
    """Clean (optionally augmented) training of the linear victim."""
    _require_classification(dataset)
    train_set = _training_set(config, dataset, resources)
    model, epochs = train_classifier(
        train_set.texts,
        train_set.outputs,
        config,
        label_names=_label_names(dataset),
        dev=(dev.texts, dev.outputs) if dev else None,
    )
    history = TrainHistory(epochs=epochs, train_size=len(train_set))
    history.best_epoch = _best_epoch(epochs)
    if dev:
        history.clean_accuracy = accuracy(model, dev.texts, dev.outputs)
    return model, history


def adversarial_train(
    config: TrainConfig,
    dataset: Dataset,
    dev: Optional[Dataset] = None,
    resources: Optional[ResourceBundle] = None,
    eval_dataset: Optional[Dataset] = None,
) -> Tuple[LinearTextClassifier, TrainHistory]:
    """Clean epochs, then training on adversarial versions regenerated with the current model.

    The adversarial set replaces the clean one; examples the attack does
    not break stay clean. Without an attack recipe this is `train`.
    """
    if not config.attack_recipe:
        return train(config, dataset, dev, resources)
    _require_classification(dataset)
    clean_set = _training_set(config, dataset, resources)
    model = LinearTextClassifier(build_vocabulary(clean_set.texts), _label_names(dataset))
    # fails early when the attack cannot run against this victim
    build_recipe(config.attack_recipe, model, resources, query_budget=config.query_budget)
    regenerations: List[int] = []
    adversarial_counts: Dict[int, int] = {}

    def regenerate(epoch: int, current: LinearTextClassifier):
        after_clean = epoch - config.num_clean_epochs
        if after_clean <= 0 or (after_clean - 1) % config.attack_period_epochs != 0:
            return None
        attack = build_recipe(config.attack_recipe, current, resources, query_budget=config.query_budget)
        examples = list(enumerate(clean_set))
        substituted: List[Example] = []
        successes = 0
        for (index, result), (_, example) in zip(iter_attacks(attack, examples, seed=config.seed + epoch), examples):
            if result.status == AttackStatus.SUCCESSFUL:
                successes += 1
                text = result.perturbed_text
                substituted.append(Example(text.text if isinstance(example.input, str) else text.column_texts, example.output))
            else:
                substituted.append(example)
        regenerations.append(epoch)
        adversarial_counts[epoch] = successes
        logger.info("Epoch %d: regenerated adversarial set, %d of %d examples perturbed", epoch, successes, len(examples))
        return [e.text for e in substituted], [e.output for e in substituted]

    model, epochs = train_classifier(
        clean_set.texts,
        clean_set.outputs,
        config,
        label_names=_label_names(dataset),
        dev=(dev.texts, dev.outputs) if dev else None,
        model=model,
        epoch_hook=regenerate,
    )
    for metrics in epochs:
        metrics.adversarial_examples = adversarial_counts.get(metrics.epoch, 0)
    history = TrainHistory(epochs=epochs, train_size=len(clean_set), regenerations=regenerations)
    history.best_epoch = _best_epoch(epochs)
    evaluation = eval_dataset or dev
    if evaluation is not None:
        history.clean_accuracy = accuracy(model, evaluation.texts, evaluation.outputs)
        history.accuracy_under_attack = accuracy_under_attack(
            model, evaluation, config.attack_recipe, resources, seed=config.seed, query_budget=config.query_budget
        )
    return model, history

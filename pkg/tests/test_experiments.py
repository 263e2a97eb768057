"""Directional experiments on the toy corpus; each trains many models."""
import numpy as np
import pytest

from advtext.datasets.toy import toy_dataset
from advtext.schemas.training import TrainConfig
from advtext.training import accuracy_under_attack, adversarial_train, evaluate_model, train

SEEDS = range(5)

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def corpus():
    data = toy_dataset()
    return data[:800], data[800:]


def per_class_sample(dataset, size, seed):
    rng = np.random.default_rng(seed)
    picked = []
    for label in (0, 1):
        indices = [i for i, e in enumerate(dataset) if e.output == label]
        picked.extend(rng.choice(indices, size=size, replace=False).tolist())
    return dataset.replace_examples([dataset[i] for i in sorted(picked)])


@pytest.mark.parametrize("size", [10, 20])
def test_augmentation_helps_with_few_examples(corpus, resources, size):
    pool, held_out = corpus
    plain, augmented = [], []
    for seed in SEEDS:
        sample = per_class_sample(pool, size, seed)
        base = dict(epochs=10, seed=seed)
        model, _ = train(TrainConfig(**base), sample)
        plain.append(evaluate_model(model, held_out))
        config = TrainConfig(augment_recipe="embedding", transformations_per_example=4, **base)
        model, _ = train(config, sample, resources=resources)
        augmented.append(evaluate_model(model, held_out))
    assert np.mean(augmented) >= np.mean(plain)


def test_adversarial_training_resists_the_attack(corpus, resources):
    pool, held_out = corpus
    evaluation = held_out[:50]
    wins = 0
    for seed in SEEDS:
        sample = per_class_sample(pool, 100, seed)
        base = dict(epochs=6, seed=seed, query_budget=100)
        clean_model, _ = train(TrainConfig(**base), sample)
        config = TrainConfig(num_clean_epochs=2, attack_recipe="deepwordbug", attack_period_epochs=1, **base)
        robust_model, _ = adversarial_train(config, sample, resources=resources)
        clean_under_attack = accuracy_under_attack(clean_model, evaluation, "deepwordbug", resources, seed, 100)
        robust_under_attack = accuracy_under_attack(robust_model, evaluation, "deepwordbug", resources, seed, 100)
        wins += robust_under_attack > clean_under_attack
        assert abs(evaluate_model(robust_model, held_out) - evaluate_model(clean_model, held_out)) <= 0.10
    assert wins >= 4

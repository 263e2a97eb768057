from collections import OrderedDict

import numpy as np
import pytest

from advtext.attack import (
    RECIPES,
    UNSUPPORTED_RECIPES,
    Attack,
    attack_dataset,
    build_attack_from_tokens,
    build_recipe,
    dump_prototype,
    parse_prototype,
    parse_token,
)
from advtext.attack.cache import ResultCache
from advtext.constraints import InputColumnModification, MaxWordsPerturbed
from advtext.core.component import BuildContext
from advtext.core.errors import (
    CapabilityError,
    DatasetError,
    UnknownComponentError,
    UnsupportedComponentError,
    UsageError,
)
from advtext.datasets.dataset import Dataset, Example
from advtext.datasets.toy import toy_translation_dataset, toy_translator
from advtext.goal_functions import UntargetedClassification
from advtext.models.attacked_text import AttackedText
from advtext.models.results import AttackStatus
from advtext.search_methods import GreedySearch
from advtext.transformations import CompositeTransformation, WordSwapQWERTY
from advtext.victims.base import CountingModel, FunctionClassifier

TEXT_RECIPES = {"morpheus", "seq2sick"}

FIDELITY = {
    "deepwordbug": ["(max_edit_distance):  30", "(wir_method):  unk", "(is_black_box):  True"],
    "textfooler-lite": [
        "(max_candidates):  50", "(min_cos_sim):  0.5", "(wir_method):  delete",
        "(allow_verb_noun_swap):  True", "(is_black_box):  True",
    ],
    "alzantot-lite": [
        "(pop_size):  60", "(max_iters):  20", "(temp):  0.3", "(max_candidates):  8",
        "(max_mse_dist):  0.5", "(max_percent):  0.2", "(compare_against_original):  False",
    ],
    "fast-alzantot-lite": [
        "(pop_size):  60", "(max_iters):  20", "(temp):  0.3", "(max_candidates):  8",
        "(max_mse_dist):  0.5", "(max_percent):  0.2",
    ],
    "iga-lite": [
        "(pop_size):  60", "(max_iters):  20", "(max_replace_times_per_index):  5",
        "(max_candidates):  50", "(max_mse_dist):  0.5", "(max_percent):  0.2",
    ],
    "input-reduction": ["(maximizable):  True", "(wir_method):  delete"],
    "kuleshov-lite": [
        "(max_candidates):  15", "(max_percent):  0.5", "(metric):  max_euclidean", "(threshold):  -0.2",
    ],
    "hotflip": [
        "(beam_width):  10", "(min_cos_sim):  0.8", "(max_num_words):  2", "(top_n):  1",
        "(is_black_box):  False",
    ],
    "morpheus": ["(target_bleu):  0.0", "(is_black_box):  True"],
    "pruthi": ["(max_num_words):  1", "(min_length):  4"],
    "pso": ["(pop_size):  60", "(max_iters):  20", "(max_candidates):  -1"],
    "pwws": ["(wir_method):  pwws"],
    "seq2sick": ["(max_edit_distance):  30", "(max_candidates):  50", "(wir_method):  unk"],
    "textbugger-lite": ["(max_candidates):  5", "(random_one):  True", "WordSwapHomoglyphSwap"],
}


def victim_for(name, victim):
    return toy_translator() if name in TEXT_RECIPES else victim


def dataset_for(name, dataset):
    return toy_translation_dataset(20) if name in TEXT_RECIPES else dataset


def test_every_recipe_has_fidelity_values():
    assert set(FIDELITY) == set(RECIPES)


@pytest.mark.parametrize("name", sorted(RECIPES))
def test_recipe_prototype_values(name, victim, resources):
    prototype = dump_prototype(build_recipe(name, victim_for(name, victim), resources))
    for value in FIDELITY[name]:
        assert value in prototype, value


@pytest.mark.parametrize("name", sorted(UNSUPPORTED_RECIPES))
def test_language_model_recipes_are_unsupported(name, victim, resources):
    with pytest.raises(UnsupportedComponentError):
        build_recipe(name, victim, resources)


def test_unknown_recipe(victim, resources):
    with pytest.raises(UnknownComponentError):
        build_recipe("no-such-recipe", victim, resources)


def test_white_box_recipe_needs_white_box_victim(resources):
    black_box = FunctionClassifier(lambda texts: [[0.5, 0.5]] * len(texts), 2)
    with pytest.raises(CapabilityError):
        build_recipe("hotflip", black_box, resources)


def test_pso_leaves_premise_untouched(victim, resources):
    attack = build_recipe("pso", victim, resources)
    assert any(isinstance(c, InputColumnModification) for c in attack.pre_transformation_constraints)
    pair = AttackedText(OrderedDict([("premise", "the movie was good"), ("hypothesis", "it was fine")]))
    assert attack.get_indices_to_order(pair) <= {4, 5, 6}


def run_records(attack, dataset, num_examples, **kwargs):
    return attack_dataset(attack, dataset, num_examples=num_examples, seed=0, progress=False, **kwargs).records


@pytest.mark.parametrize("name", sorted(RECIPES))
def test_cache_is_transparent(name, victim, resources, dataset):
    model, data = victim_for(name, victim), dataset_for(name, dataset)
    cached = build_recipe(name, model, resources, query_budget=300, use_cache=True)
    uncached = build_recipe(name, model, resources, query_budget=300, use_cache=False)
    assert run_records(cached, data, 3) == run_records(uncached, data, 3)


def test_cache_saves_genetic_victim_calls(victim, resources, dataset):
    calls = {}
    rates = {}
    for use_cache in (True, False):
        counted = CountingModel(victim)
        attack = build_recipe("alzantot-lite", counted, resources, query_budget=3000, use_cache=use_cache)
        example = next(e for e in dataset if victim.predict_proba([e.text])[0].argmax() == e.output)
        attack.attack(example.attacked_text(), example.output, np.random.default_rng(0))
        calls[use_cache] = counted.calls
        rates[use_cache] = attack.cache_stats()["goal_cache_hit_rate"]
    assert calls[True] < calls[False]
    assert rates[True] > 0.5
    assert rates[False] == 0.0


@pytest.mark.parametrize("name", sorted(RECIPES))
def test_prototype_round_trip(name, victim, resources, dataset):
    model, data = victim_for(name, victim), dataset_for(name, dataset)
    attack = build_recipe(name, model, resources, query_budget=200)
    prototype = dump_prototype(attack)
    rebuilt = parse_prototype(prototype, BuildContext(model=model, resources=resources, query_budget=200))
    assert dump_prototype(rebuilt) == prototype
    assert run_records(attack, data, 2) == run_records(rebuilt, data, 2)


@pytest.mark.parametrize("text", ["", "Attack(\n  (search_method): GreedySearch\n)", "Attack(\n  nonsense\n)"])
def test_malformed_prototype(text, victim, resources):
    with pytest.raises(UsageError):
        parse_prototype(text, BuildContext(model=victim, resources=resources))


def test_summary_counts(victim, resources, dataset):
    run = attack_dataset(build_recipe("deepwordbug", victim, resources), dataset, num_examples=10, progress=False)
    summary = run.summary
    assert summary.total == 10
    assert summary.successful + summary.failed + summary.skipped + summary.maximized == 10
    decided = summary.successful + summary.failed
    assert summary.attack_success_rate == pytest.approx(100.0 * summary.successful / decided if decided else 0.0)
    assert [r.index for r in run.records] == list(range(10))
    assert all(r.status == AttackStatus.SKIPPED for r in run.records if r.original_output != r.ground_truth)


def test_always_wrong_victim_skips_everything(resources):
    data = Dataset([Example("the movie was good", 0), Example("it was bad", 0)])
    wrong = FunctionClassifier(lambda texts: [[0.1, 0.9]] * len(texts), 2)
    run = attack_dataset(build_recipe("deepwordbug", wrong, resources), data, progress=False)
    assert [r.status for r in run.records] == [AttackStatus.SKIPPED, AttackStatus.SKIPPED]
    assert run.summary.skipped == 2
    assert run.summary.attack_success_rate == 0.0
    assert run.summary.average_num_queries == 0.0
    assert run.summary.original_accuracy == 0.0


def test_input_reduction_keeps_the_label(victim, resources, dataset):
    run = attack_dataset(build_recipe("input-reduction", victim, resources), dataset, num_examples=5, progress=False)
    for record in run.records:
        assert record.status in (AttackStatus.MAXIMIZED, AttackStatus.SKIPPED)
        if record.status == AttackStatus.MAXIMIZED:
            assert record.perturbed_output == record.original_output
            assert len(record.perturbed_text.split()) <= len(record.original_text.split())


def test_workers_do_not_change_results(victim, resources, dataset):
    attack = build_recipe("deepwordbug", victim, resources)
    assert run_records(attack, dataset, 8, num_workers=3) == run_records(attack, dataset, 8, num_workers=1)


def test_offset_selects_examples(victim, resources, dataset):
    records = run_records(build_recipe("pruthi", victim, resources), dataset, 3, offset=4)
    assert [r.index for r in records] == [4, 5, 6]


def test_empty_dataset(victim, resources):
    with pytest.raises(DatasetError):
        attack_dataset(build_recipe("pruthi", victim, resources), Dataset([]), progress=False)


def test_clone_has_its_own_counters(victim, resources):
    attack = build_recipe("deepwordbug", victim, resources)
    attack.attack("the movie was good.", 1)
    clone = attack.clone()
    assert clone.goal_function.victim_calls == 0
    assert clone.search_method.get_goal_results.__self__ is clone.goal_function
    assert attack.goal_function.victim_calls > 0


def test_parse_token():
    assert parse_token("beam-search:beam_width=4") == ("beam-search", {"beam_width": 4})
    name, params = parse_token("thought-vector:threshold=-0.2,window_size=inf,metric=cosine")
    assert params == {"threshold": -0.2, "window_size": float("inf"), "metric": "cosine"}
    with pytest.raises(UsageError):
        parse_token("beam-search:4")


def test_build_attack_from_tokens(victim, resources):
    context = BuildContext(model=victim, resources=resources)
    attack = build_attack_from_tokens(
        context,
        "word-swap-embedding:max_candidates=5",
        constraints=["repeat", "stopword", "max-words-perturbed:max_percent=0.2"],
        search_method="beam-search:beam_width=2",
    )
    prototype = dump_prototype(attack)
    assert "(beam_width):  2" in prototype
    assert "(max_candidates):  5" in prototype
    assert len(attack.pre_transformation_constraints) == 2
    assert "UntargetedClassification" in prototype


def test_composite_token(victim, resources):
    context = BuildContext(model=victim, resources=resources)
    attack = build_attack_from_tokens(context, "composite:members=word-swap-qwerty+word-deletion", search_method="greedy")
    assert isinstance(attack.transformation, CompositeTransformation)
    assert len(attack.transformation.transformations) == 2


@pytest.mark.parametrize(
    "kwargs, error",
    [
        ({"transformation": "word-swap-nothing"}, UnknownComponentError),
        ({"transformation": "word-swap-masked-lm"}, UnsupportedComponentError),
        ({"transformation": "word-deletion", "constraints": ["use"]}, UnsupportedComponentError),
        ({"transformation": "word-swap-embedding:bogus=1"}, UsageError),
        ({"transformation": "word-deletion", "search_method": "alzantot"}, CapabilityError),
    ],
)
def test_bad_tokens(kwargs, error, victim, resources):
    with pytest.raises(error):
        build_attack_from_tokens(BuildContext(model=victim, resources=resources), **kwargs)


def test_constraint_verdicts_follow_word_alignment(sentiment_model):
    original = AttackedText("a b")
    swapped = original.replace_word_at_index(1, "a")
    rebuilt = original.delete_word_at_index(1).insert_word_after_index(0, "a")
    assert swapped.text == rebuilt.text
    for candidates in ([swapped, rebuilt], [rebuilt, swapped]):
        attack = Attack(
            UntargetedClassification(sentiment_model),
            [MaxWordsPerturbed(max_num_words=1)],
            WordSwapQWERTY(),
            GreedySearch(),
        )
        assert attack.filter_transformations(candidates, original, original) == [swapped]


def test_result_cache_evicts_least_recently_used():
    cache = ResultCache(max_size=2)
    cache.check("first", lambda: True)
    cache.check("second", lambda: True)
    cache.check("first", lambda: False)
    cache.check("third", lambda: False)
    assert len(cache) == 2
    assert cache.check("first", lambda: False) is True
    assert cache.check("second", lambda: False) is False
    assert (cache.hits, cache.misses) == (2, 4)

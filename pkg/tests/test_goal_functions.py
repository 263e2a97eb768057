import numpy as np
import pytest

from advtext.core.errors import GoalFunctionError
from advtext.goal_functions import (
    InputReduction,
    MinimizeBleu,
    NonOverlappingOutput,
    TargetedClassification,
    UntargetedClassification,
)
from advtext.models.attacked_text import AttackedText
from advtext.models.results import GoalStatus
from advtext.victims.base import CountingModel, FunctionClassifier
from advtext.victims.translation import DictionaryTranslator


def table_model(table, default=(0.9, 0.1)):
    return FunctionClassifier(lambda texts: [table.get(t, default) for t in texts], 2)


def start(goal, text, truth):
    result, _ = goal.init_attack_example(AttackedText(text), truth)
    return result


def test_untargeted_scores():
    goal = UntargetedClassification(table_model({}))
    initial = start(goal, "x", 0)
    assert initial.score == pytest.approx(0.1)
    assert initial.status == GoalStatus.SEARCHING
    flipped = goal.evaluate_output(np.array([0.4, 0.6]), AttackedText("y"))
    assert flipped.score == pytest.approx(0.6)
    assert flipped.status == GoalStatus.SUCCEEDED
    assert flipped.output == 1


def test_untargeted_tie_goes_to_lowest_label():
    goal = UntargetedClassification(table_model({"x": (0.1, 0.9)}))
    start(goal, "x", 1)
    assert goal.evaluate_output(np.array([0.5, 0.5]), AttackedText("y")).status == GoalStatus.SUCCEEDED


def test_misclassified_input_is_skipped():
    goal = UntargetedClassification(table_model({}))
    assert start(goal, "x", 1).status == GoalStatus.SKIPPED


def test_targeted_scores():
    goal = TargetedClassification(table_model({}), target_class=1)
    start(goal, "x", 0)
    hit = goal.evaluate_output(np.array([0.2, 0.8]), AttackedText("y"))
    assert (hit.score, hit.status) == (pytest.approx(0.8), GoalStatus.SUCCEEDED)
    miss = goal.evaluate_output(np.array([0.8, 0.2]), AttackedText("y"))
    assert (miss.score, miss.status) == (pytest.approx(0.2), GoalStatus.SEARCHING)


def test_targeted_rejects_ground_truth_target():
    goal = TargetedClassification(table_model({}), target_class=0)
    with pytest.raises(GoalFunctionError):
        start(goal, "x", 0)


def test_input_reduction_scores():
    goal = InputReduction(table_model({}))
    initial = start(goal, "a b c d", 0)
    assert (initial.score, initial.status) == (0.0, GoalStatus.MAXIMIZING)
    half = goal.evaluate_output(np.array([0.9, 0.1]), AttackedText("a b"))
    assert (half.score, half.status) == (0.5, GoalStatus.MAXIMIZING)
    flipped = goal.evaluate_output(np.array([0.1, 0.9]), AttackedText("a"))
    assert flipped.score == 0.0
    assert flipped.status != GoalStatus.SUCCEEDED


def test_non_overlapping_output():
    goal = NonOverlappingOutput(DictionaryTranslator({}))
    initial = start(goal, "a b", "a b")
    assert initial.score == 0.0
    assert goal.evaluate_output("a c", AttackedText("a c")).score == 0.5
    disjoint = goal.evaluate_output("x y", AttackedText("x y"))
    assert (disjoint.score, disjoint.status) == (1.0, GoalStatus.SUCCEEDED)


def test_minimize_bleu():
    goal = MinimizeBleu(DictionaryTranslator({}), target_bleu=0.0)
    initial = start(goal, "the cat sat on a mat", "")
    assert initial.score == pytest.approx(0.0)
    empty = goal.evaluate_output("", AttackedText("x"))
    assert (empty.score, empty.status) == (1.0, GoalStatus.SUCCEEDED)
    partial = goal.evaluate_output("the cat sat on the mat", AttackedText("x"))
    assert partial.score == pytest.approx(1.0 - (1 / 12) ** 0.25, abs=1e-9)
    assert partial.status == GoalStatus.SEARCHING


@pytest.mark.parametrize("output", [(0.7, 0.7), (1.2, -0.2), (np.nan, 0.5)])
def test_malformed_score_vectors(output):
    goal = UntargetedClassification(FunctionClassifier(lambda texts: [output] * len(texts), 2))
    with pytest.raises(GoalFunctionError):
        start(goal, "x", 0)


def test_label_outside_range():
    with pytest.raises(GoalFunctionError):
        start(UntargetedClassification(table_model({})), "x", 5)


def test_text_goal_rejects_score_vectors():
    goal = NonOverlappingOutput(table_model({}))
    with pytest.raises(GoalFunctionError):
        start(goal, "x", "x")


def test_query_budget_truncates_batch():
    goal = UntargetedClassification(table_model({}), query_budget=3)
    start(goal, "x", 0)
    results, search_over = goal.get_results([AttackedText(t) for t in ["a", "b", "c", "d"]])
    assert len(results) == 2
    assert search_over
    assert goal.num_queries == 3
    assert goal.get_results([AttackedText("e")]) == ([], True)


def test_cache_serves_repeated_texts():
    model = CountingModel(table_model({}))
    goal = UntargetedClassification(model)
    start(goal, "x", 0)
    goal.get_results([AttackedText("y"), AttackedText("y"), AttackedText("x")])
    assert goal.num_queries == 4
    assert goal.victim_calls == model.calls == 2
    assert goal.cache_hits == 2


def test_disabled_cache_queries_every_text():
    model = CountingModel(table_model({}))
    goal = UntargetedClassification(model, use_cache=False)
    start(goal, "x", 0)
    goal.get_results([AttackedText("y"), AttackedText("y")])
    assert model.calls == 3


def test_clone_has_fresh_cache():
    goal = UntargetedClassification(table_model({}))
    start(goal, "x", 0)
    clone = goal.clone()
    assert clone.victim_calls == 0
    assert clone._cache == {}
    assert goal.victim_calls == 1

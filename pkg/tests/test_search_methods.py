import itertools
import math

import numpy as np
import pytest

from advtext.attack import Attack
from advtext.core.errors import CapabilityError, UsageError
from advtext.goal_functions import UntargetedClassification
from advtext.models.attacked_text import AttackedText
from advtext.models.results import AttackStatus
from advtext.resources.lexicons import SynonymLexicon
from advtext.search_methods import (
    BeamSearch,
    GeneticAlgorithm,
    GreedySearch,
    GreedyWordSwapWIR,
    ImprovedGeneticAlgorithm,
    ParticleSwarmOptimization,
    normalize_gains,
    selection_probabilities,
    update_velocity,
)
from advtext.transformations import WordDeletion, WordSwapLexicon
from advtext.victims.base import CountingModel, FunctionClassifier

WORDS = ["a", "b", "c", "d", "e", "f"]
SOURCE = " ".join(WORDS)


def additive_model(weights, threshold):
    """P(label 1) grows with the summed weights of the words present."""

    def predict(texts):
        rows = []
        for text in texts:
            total = sum(weights.get(w, 0.0) for w in text.split())
            p = 1.0 / (1.0 + math.exp(-5.0 * (total - threshold)))
            rows.append((1.0 - p, p))
        return rows

    return FunctionClassifier(predict, 2)


def synonym_setup(seed, threshold=1.2):
    rng = np.random.default_rng(seed)
    synonyms = {w: [f"{w}x", f"{w}y"] for w in WORDS}
    weights = {s: float(rng.uniform()) for options in synonyms.values() for s in options}
    lexicon = SynonymLexicon({w: [(s, None) for s in options] for w, options in synonyms.items()})
    return synonyms, weights, lexicon, additive_model(weights, threshold)


def build_attack(model, lexicon, search, query_budget=None):
    goal = UntargetedClassification(model, query_budget=query_budget)
    return Attack(goal, [], WordSwapLexicon(lexicon), search)


def random_instance(seed):
    """Up to six words with one to three candidates each and a random flip threshold."""
    rng = np.random.default_rng(seed)
    words = WORDS[: int(rng.integers(3, len(WORDS) + 1))]
    synonyms = {w: [f"{w}{k}" for k in range(int(rng.integers(1, 4)))] for w in words}
    weights = {s: float(rng.uniform()) for options in synonyms.values() for s in options}
    threshold = float(rng.uniform(0.5, 2.5))
    lexicon = SynonymLexicon({w: [(s, None) for s in options] for w, options in synonyms.items()})
    return words, synonyms, weights, threshold, lexicon, additive_model(weights, threshold)


def exhaustive_optimum(words, synonyms, weights, threshold):
    """Fewest swaps that flip the label and the best summed weight at that depth, or None."""
    best = {}
    for choice in itertools.product(*[[None] + synonyms[w] for w in words]):
        depth = sum(c is not None for c in choice)
        total = sum(weights[c] for c in choice if c is not None)
        if total > threshold:
            best[depth] = max(best.get(depth, -np.inf), total)
    if not best:
        return None
    depth = min(best)
    return depth, best[depth]


@pytest.mark.parametrize("seed", range(50))
def test_wide_beam_matches_exhaustive_search(seed):
    words, synonyms, weights, threshold, lexicon, model = random_instance(seed)
    oracle = exhaustive_optimum(words, synonyms, weights, threshold)
    space = int(np.prod([len(synonyms[w]) + 1 for w in words]))
    result = build_attack(model, lexicon, BeamSearch(beam_width=space)).attack(" ".join(words), 0)
    assert (result.status == AttackStatus.SUCCESSFUL) == (oracle is not None)
    if oracle is not None:
        depth, total = oracle
        assert result.num_words_changed == depth
        assert result.perturbed_result.score == pytest.approx(1.0 / (1.0 + math.exp(-5.0 * (total - threshold))))


@pytest.mark.parametrize("seed", range(50))
@pytest.mark.parametrize("make_search", [lambda: GreedyWordSwapWIR("unk"), GreedySearch])
def test_greedy_successes_are_oracle_successes(seed, make_search):
    words, synonyms, weights, threshold, lexicon, model = random_instance(seed)
    oracle = exhaustive_optimum(words, synonyms, weights, threshold)
    result = build_attack(model, lexicon, make_search()).attack(" ".join(words), 0)
    assert all(word == w or word in synonyms[w] for word, w in zip(result.perturbed_text.words, words))
    if result.status == AttackStatus.SUCCESSFUL:
        assert oracle is not None
        assert result.num_words_changed >= oracle[0]


def test_greedy_is_beam_of_one():
    _, _, lexicon, model = synonym_setup(0)
    greedy = build_attack(model, lexicon, GreedySearch()).attack(SOURCE, 0)
    beam = build_attack(model, lexicon, BeamSearch(beam_width=1)).attack(SOURCE, 0)
    assert greedy.perturbed_text == beam.perturbed_text
    assert greedy.num_queries == beam.num_queries


def test_beam_width_must_be_positive():
    with pytest.raises(ValueError):
        BeamSearch(beam_width=0)


def importance_attack(weights, wir_method):
    model = additive_model(weights, 0.0)
    attack = build_attack(model, SynonymLexicon({}), GreedyWordSwapWIR(wir_method))
    initial, _ = attack.goal_function.init_attack_example(AttackedText("a b c"), 0)
    return attack, initial


@pytest.mark.parametrize("wir_method", ["unk", "delete"])
def test_word_importance_order(wir_method):
    attack, initial = importance_attack({"a": -1.0, "b": -3.0, "c": -2.0}, wir_method)
    order, search_over = attack.search_method._get_index_order(initial)
    assert order == [1, 2, 0]
    assert not search_over


def test_word_importance_ties_go_to_lower_index():
    attack, initial = importance_attack({"a": -1.0, "b": -1.0, "c": -1.0}, "unk")
    assert attack.search_method._get_index_order(initial)[0] == [0, 1, 2]


def test_random_importance_is_a_permutation():
    attack, initial = importance_attack({}, "random")
    attack.search_method.rng = np.random.default_rng(0)
    assert sorted(attack.search_method._get_index_order(initial)[0]) == [0, 1, 2]


def test_unknown_importance_method():
    with pytest.raises(UsageError):
        GreedyWordSwapWIR("mystery")


def test_gradient_importance_needs_white_box():
    with pytest.raises(CapabilityError):
        importance_attack({}, "gradient")


SEARCHES = [
    lambda: GreedyWordSwapWIR("unk"),
    lambda: GreedyWordSwapWIR("pwws"),
    lambda: BeamSearch(beam_width=4),
    lambda: GeneticAlgorithm(pop_size=6, max_iters=4),
    lambda: ImprovedGeneticAlgorithm(pop_size=6, max_iters=4),
    lambda: ParticleSwarmOptimization(pop_size=6, max_iters=4),
]


@pytest.mark.parametrize("make_search", SEARCHES)
def test_query_budget_is_respected(make_search):
    _, _, lexicon, model = synonym_setup(1, threshold=100.0)
    counted = CountingModel(model)
    result = build_attack(counted, lexicon, make_search(), query_budget=15).attack(SOURCE, 0)
    assert result.num_queries <= 15
    assert counted.calls <= 15
    assert result.status == AttackStatus.FAILED


@pytest.mark.parametrize("make_search", SEARCHES)
def test_no_candidates_fails_with_original_text(make_search):
    _, _, _, model = synonym_setup(1)
    result = build_attack(model, SynonymLexicon({}), make_search()).attack(SOURCE, 0)
    assert result.status == AttackStatus.FAILED
    assert result.perturbed_text.text == SOURCE


@pytest.mark.parametrize("search", [GeneticAlgorithm(), ImprovedGeneticAlgorithm(), ParticleSwarmOptimization()])
def test_population_searches_need_fixed_word_count(search, sentiment_model):
    with pytest.raises(CapabilityError):
        Attack(UntargetedClassification(sentiment_model), [], WordDeletion(), search)


def test_genetic_population_size_is_constant(monkeypatch):
    sizes = []

    def spy(scores, temp, mask=None):
        sizes.append(len(scores))
        return selection_probabilities(scores, temp, mask)

    monkeypatch.setattr("advtext.search_methods.genetic.selection_probabilities", spy)
    _, _, lexicon, model = synonym_setup(2, threshold=100.0)
    build_attack(model, lexicon, GeneticAlgorithm(pop_size=5, max_iters=3)).attack(SOURCE, 0)
    assert sizes == [5, 5, 5]


def test_genetic_without_iterations_returns_best_initial_member(monkeypatch):
    calls = []
    monkeypatch.setattr(
        "advtext.search_methods.genetic.selection_probabilities", lambda *args, **kwargs: calls.append(args)
    )
    _, _, lexicon, model = synonym_setup(2, threshold=5.0)
    result = build_attack(model, lexicon, GeneticAlgorithm(pop_size=4, max_iters=0)).attack(SOURCE, 0)
    assert calls == []
    assert result.perturbed_result.score > result.original_result.score
    assert result.num_words_changed == 1


def test_genetic_gives_up_when_every_member_is_exhausted():
    _, _, _, model = synonym_setup(2)
    search = GeneticAlgorithm(pop_size=4, max_iters=50, give_up_if_no_improvement=True)
    result = build_attack(model, SynonymLexicon({}), search).attack(SOURCE, 0)
    assert result.num_queries == 1
    assert result.status == AttackStatus.FAILED


def test_selection_is_uniform_at_high_temperature():
    probs = selection_probabilities([0.1, 0.9, 0.5, 0.3], temp=1e9)
    assert np.allclose(probs, 0.25)
    draws = np.random.default_rng(0).choice(4, size=10_000, p=probs)
    sigma = math.sqrt(10_000 * 0.25 * 0.75)
    for count in np.bincount(draws, minlength=4):
        assert abs(count - 2500) <= 3 * sigma


def test_selection_mask():
    probs = selection_probabilities([0.1, 0.9], temp=0.3, mask=np.array([True, False]))
    assert probs.tolist() == [1.0, 0.0]


def test_normalize_gains():
    assert normalize_gains(np.array([-1.0, 2.0, 2.0])).tolist() == [0.0, 0.5, 0.5]
    assert normalize_gains(np.array([-1.0, 0.0])).tolist() == [0.5, 0.5]


def test_zero_velocity_never_moves():
    words = ("a", "b", "c")
    velocity = update_velocity(np.zeros(3), words, words, words, omega=0.5)
    assert velocity.tolist() == [0.0, 0.0, 0.0]
    pso = ParticleSwarmOptimization(post_turn_check=False)
    pso.rng = np.random.default_rng(0)
    target = AttackedText("a b c")
    assert pso.turn(AttackedText("x y z"), target, velocity, target) is target


def test_full_velocity_adopts_source_words():
    velocity = update_velocity(np.zeros(3), ("a", "b", "c"), ("x", "b", "c"), ("x", "y", "c"), omega=0.0)
    assert velocity.tolist() == [1.0, 0.5, 0.0]
    pso = ParticleSwarmOptimization(post_turn_check=False)
    pso.rng = np.random.default_rng(0)
    moved = pso.turn(AttackedText("x y z"), AttackedText("a b c"), np.ones(3), AttackedText("a b c"))
    assert moved.text == "x y z"


def test_population_searches_are_seeded():
    _, _, lexicon, model = synonym_setup(3, threshold=2.0)
    runs = [
        build_attack(model, lexicon, ParticleSwarmOptimization(pop_size=4, max_iters=3)).attack(
            SOURCE, 0, rng=np.random.default_rng(7)
        )
        for _ in range(2)
    ]
    assert runs[0].perturbed_text == runs[1].perturbed_text
    assert runs[0].num_queries == runs[1].num_queries

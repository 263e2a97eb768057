import logging
from typing import List, Optional

import numpy as np

from advtext.models.results import GoalFunctionResult
from advtext.search_methods.base import PopulationMember, SearchMethod, selection_probabilities

logger = logging.getLogger(__name__)


class GeneticAlgorithm(SearchMethod):
    """Population search with greedy mutation, crossover and elitism.

    Each member carries per-index selection weights: the number of
    candidate swaps the original text has at that index. A member whose
    mutation fails to improve it is marked exhausted; with
    `give_up_if_no_improvement` exhausted members are never selected as
    parents, and the search stops once every member is exhausted.
    """

    def __init__(
        self,
        pop_size: int = 60,
        max_iters: int = 20,
        temp: float = 0.3,
        give_up_if_no_improvement: bool = False,
        post_crossover_check: bool = True,
        max_crossover_retries: int = 20,
    ):
        self.pop_size = pop_size
        self.max_iters = max_iters
        self.temp = temp
        self.give_up_if_no_improvement = give_up_if_no_improvement
        self.post_crossover_check = post_crossover_check
        self.max_crossover_retries = max_crossover_retries
        self._search_over = False

    def check_transformation_compatibility(self, transformation) -> bool:
        return transformation.preserves_word_count

    # Population operations

    def _index_weights(self, member: PopulationMember) -> np.ndarray:
        return member.attributes["num_candidate_transformations"]

    def _modify_member(self, member: PopulationMember, result: GoalFunctionResult, index: int) -> PopulationMember:
        counts = member.attributes["num_candidate_transformations"]
        return PopulationMember(result.attacked_text, result, attributes={"num_candidate_transformations": counts})

    def _perturb(
        self, member: PopulationMember, original_result: GoalFunctionResult, index: Optional[int] = None
    ) -> PopulationMember:
        """Replace the member by its best improving swap at a weighted random index."""
        weights = np.array(self._index_weights(member), dtype=np.float64)
        num_words = len(weights)
        attempts = np.count_nonzero(weights) if index is None else 1
        for _ in range(attempts):
            if index is None:
                if weights.sum() == 0:
                    break
                idx = int(self.rng.choice(num_words, p=weights / weights.sum()))
            else:
                idx = index
            candidates = self.get_transformations(
                member.attacked_text, original_result.attacked_text, indices_to_modify=[idx]
            )
            weights[idx] = 0
            if not candidates:
                continue
            results, self._search_over = self.get_goal_results(candidates)
            if results:
                scores = np.array([r.score for r in results])
                best = int(np.argmax(scores))
                if scores[best] > member.score:
                    return self._modify_member(member, results[best], idx)
            if self._search_over:
                break
        exhausted = PopulationMember(member.attacked_text, member.result, attributes=dict(member.attributes))
        exhausted.attributes["exhausted"] = True
        return exhausted

    def _crossover_indices(self, parent1: PopulationMember, parent2: PopulationMember) -> List[int]:
        mask = self.rng.uniform(size=len(parent1.words)) < 0.5
        return [i for i in np.flatnonzero(mask) if parent1.words[i] != parent2.words[i]]

    def _crossover_attributes(self, parent1: PopulationMember, parent2: PopulationMember, indices: List[int]) -> dict:
        attributes = {"num_candidate_transformations": np.copy(parent1.attributes["num_candidate_transformations"])}
        for i in indices:
            attributes["num_candidate_transformations"][i] = parent2.attributes["num_candidate_transformations"][i]
        return attributes

    def _crossover(
        self, parent1: PopulationMember, parent2: PopulationMember, original_result: GoalFunctionResult
    ) -> Optional[PopulationMember]:
        original_text = original_result.attacked_text
        child_text, indices = None, []
        for _ in range(self.max_crossover_retries + 1):
            indices = self._crossover_indices(parent1, parent2)
            candidate = parent1.attacked_text.replace_words_at_indices(indices, [parent2.words[i] for i in indices])
            if not self.post_crossover_check or not indices:
                child_text = candidate
                break
            if self.filter_transformations([candidate], parent1.attacked_text, original_text):
                child_text = candidate
                break
        if child_text is None:
            parent = parent1 if self.rng.uniform() < 0.5 else parent2
            return PopulationMember(parent.attacked_text, parent.result, attributes=dict(parent.attributes))
        results, self._search_over = self.get_goal_results([child_text])
        if not results:
            return None
        return PopulationMember(child_text, results[0], attributes=self._crossover_attributes(parent1, parent2, indices))

    def _initialize_population(self, initial_result: GoalFunctionResult) -> List[PopulationMember]:
        text = initial_result.attacked_text
        counts = np.zeros(text.num_words)
        for i in range(text.num_words):
            counts[i] = len(self.get_transformations(text, text, indices_to_modify=[i]))
        # indices without candidates now may gain some later; keep them selectable
        epsilon = max(1, int(np.min(counts) * 0.1)) if len(counts) else 1
        counts = np.maximum(counts, epsilon)
        seed = PopulationMember(text, initial_result, attributes={"num_candidate_transformations": counts})
        population = []
        for _ in range(self.pop_size):
            population.append(self._perturb(seed, initial_result))
            if self._search_over:
                break
        return population

    def _next_elite(self, elite: PopulationMember, original_result: GoalFunctionResult) -> PopulationMember:
        return elite

    # Search

    def perform_search(self, initial_result: GoalFunctionResult) -> GoalFunctionResult:
        self._search_over = False
        population = self._initialize_population(initial_result)
        if not population:
            return initial_result
        pop_size = len(population)
        for generation in range(self.max_iters):
            population = sorted(population, key=lambda m: m.score, reverse=True)
            if self._search_over or population[0].result.succeeded:
                break
            mask = None
            if self.give_up_if_no_improvement:
                mask = np.array([not m.attributes.get("exhausted", False) for m in population])
                if not mask.any():
                    logger.debug("Every member is exhausted after %d generations", generation)
                    break
            probs = selection_probabilities([m.score for m in population], self.temp, mask)
            parents1 = self.rng.choice(pop_size, size=pop_size - 1, p=probs)
            parents2 = self.rng.choice(pop_size, size=pop_size - 1, p=probs)
            elite = self._next_elite(population[0], initial_result)
            children = []
            for p1, p2 in zip(parents1, parents2):
                if self._search_over:
                    break
                child = self._crossover(population[p1], population[p2], initial_result)
                if child is None or self._search_over:
                    break
                children.append(self._perturb(child, initial_result))
            # budget ran out mid-generation: fill with survivors to keep the size fixed
            children.extend(population[1:pop_size - len(children)])
            population = [elite] + children
        best = max(population, key=lambda m: m.result.rank_key())
        return best.result if best.result.rank_key() > initial_result.rank_key() else initial_result

    def extra_repr_keys(self) -> List[str]:
        return ["pop_size", "max_iters", "temp", "give_up_if_no_improvement"]


class ImprovedGeneticAlgorithm(GeneticAlgorithm):
    """Single-cut crossover, a replacement quota per index, and a mutated elite.

    The initial population replaces each word in turn with its best
    improving swap, cycling over the indices until `pop_size` members exist.
    """

    def __init__(
        self,
        pop_size: int = 60,
        max_iters: int = 20,
        max_replace_times_per_index: int = 5,
        give_up_if_no_improvement: bool = False,
        post_crossover_check: bool = True,
        max_crossover_retries: int = 20,
    ):
        super().__init__(
            pop_size=pop_size,
            max_iters=max_iters,
            temp=0.3,
            give_up_if_no_improvement=give_up_if_no_improvement,
            post_crossover_check=post_crossover_check,
            max_crossover_retries=max_crossover_retries,
        )
        self.max_replace_times_per_index = max_replace_times_per_index

    def _index_weights(self, member: PopulationMember) -> np.ndarray:
        return member.attributes["num_replacements_left"]

    def _modify_member(self, member, result, index):
        left = np.copy(member.attributes["num_replacements_left"])
        left[index] -= 1
        return PopulationMember(result.attacked_text, result, attributes={"num_replacements_left": left})

    def _crossover_indices(self, parent1, parent2):
        num_words = len(parent1.words)
        cut = int(self.rng.integers(0, num_words)) if num_words else 0
        return [i for i in range(cut, num_words) if parent1.words[i] != parent2.words[i]]

    def _crossover_attributes(self, parent1, parent2, indices):
        left = np.copy(parent1.attributes["num_replacements_left"])
        for i in indices:
            left[i] = parent2.attributes["num_replacements_left"][i]
        return {"num_replacements_left": left}

    def _initialize_population(self, initial_result):
        text = initial_result.attacked_text
        if text.num_words == 0:
            return []
        left = np.full(text.num_words, self.max_replace_times_per_index, dtype=np.float64)
        seed = PopulationMember(text, initial_result, attributes={"num_replacements_left": left})
        population = []
        for k in range(self.pop_size):
            population.append(self._perturb(seed, initial_result, index=k % text.num_words))
            if self._search_over:
                break
        return population

    def _next_elite(self, elite, original_result):
        if self._search_over:
            return elite
        return self._perturb(elite, original_result)

    def extra_repr_keys(self) -> List[str]:
        return ["pop_size", "max_iters", "max_replace_times_per_index", "give_up_if_no_improvement"]

import logging
from typing import List, Tuple

import numpy as np

from advtext.models.attacked_text import AttackedText
from advtext.models.results import GoalFunctionResult
from advtext.search_methods.base import PopulationMember, SearchMethod

logger = logging.getLogger(__name__)


def normalize_gains(gains: np.ndarray) -> np.ndarray:
    """Clip negatives and normalize; uniform when nothing is positive."""
    gains = np.clip(np.asarray(gains, dtype=np.float64), 0.0, None)
    total = gains.sum()
    if total == 0:
        return np.full(len(gains), 1.0 / len(gains)) if len(gains) else gains
    return gains / total


def update_velocity(
    velocity: np.ndarray,
    particle_words: Tuple[str, ...],
    local_words: Tuple[str, ...],
    global_words: Tuple[str, ...],
    omega: float,
) -> np.ndarray:
    """Per-index change probability: inertia plus the pull of both elites.

    The pull at an index is 1 where the particle disagrees with an elite,
    so the result stays in [0, 1].
    """
    local_pull = np.array([p != l for p, l in zip(particle_words, local_words)], dtype=np.float64)
    global_pull = np.array([p != g for p, g in zip(particle_words, global_words)], dtype=np.float64)
    return omega * velocity + (1.0 - omega) * (local_pull + global_pull) / 2.0


class ParticleSwarmOptimization(SearchMethod):
    """Discrete particle swarm over word substitutions.

    A particle's position is its text; its velocity is a per-index
    probability of adopting an elite's word. Inertia decays linearly from
    `omega_1` to `omega_2`; the chance to turn toward the particle's own
    best falls from `c1_origin` to `c2_origin` while the chance to turn
    toward the global best rises the other way.
    """

    def __init__(
        self,
        pop_size: int = 60,
        max_iters: int = 20,
        omega_1: float = 0.8,
        omega_2: float = 0.2,
        c1_origin: float = 0.8,
        c2_origin: float = 0.2,
        post_turn_check: bool = True,
    ):
        self.pop_size = pop_size
        self.max_iters = max_iters
        self.omega_1 = omega_1
        self.omega_2 = omega_2
        self.c1_origin = c1_origin
        self.c2_origin = c2_origin
        self.post_turn_check = post_turn_check
        self._search_over = False

    def check_transformation_compatibility(self, transformation) -> bool:
        return transformation.preserves_word_count

    def turn(
        self, source: AttackedText, target: AttackedText, probabilities: np.ndarray, original_text: AttackedText
    ) -> AttackedText:
        """Copy `source` words into `target` index by index with the given probabilities."""
        draws = self.rng.uniform(size=len(probabilities))
        indices = [
            i for i in np.flatnonzero(draws < probabilities) if source.words[i] != target.words[i]
        ]
        if not indices:
            return target
        moved = target.replace_words_at_indices(indices, [source.words[i] for i in indices])
        if self.post_turn_check and not self.filter_transformations([moved], target, original_text):
            return target
        return moved

    def _best_neighbors(
        self, member: PopulationMember, original_result: GoalFunctionResult
    ) -> Tuple[List[GoalFunctionResult], np.ndarray]:
        """Best swap at every index and the score gain it brings."""
        neighbors: List[GoalFunctionResult] = []
        gains = np.zeros(len(member.words))
        for i in range(len(member.words)):
            neighbors.append(member.result)
            if self._search_over:
                continue
            candidates = self.get_transformations(
                member.attacked_text, original_result.attacked_text, indices_to_modify=[i]
            )
            if not candidates:
                continue
            results, self._search_over = self.get_goal_results(candidates)
            if not results:
                continue
            best = int(np.argmax([r.score for r in results]))
            neighbors[i] = results[best]
            gains[i] = results[best].score - member.score
        return neighbors, gains

    def _perturb(self, member: PopulationMember, original_result: GoalFunctionResult) -> PopulationMember:
        if not member.words:
            return member
        neighbors, gains = self._best_neighbors(member, original_result)
        index = int(self.rng.choice(len(gains), p=normalize_gains(gains)))
        return PopulationMember(neighbors[index].attacked_text, neighbors[index])

    def _change_ratio(self, text: AttackedText, original_text: AttackedText) -> float:
        if original_text.num_words == 0:
            return 0.0
        return original_text.num_words_diff(text) / original_text.num_words

    def perform_search(self, initial_result: GoalFunctionResult) -> GoalFunctionResult:
        self._search_over = False
        original_text = initial_result.attacked_text
        num_words = original_text.num_words
        if num_words == 0:
            return initial_result
        seed = PopulationMember(original_text, initial_result)
        population: List[PopulationMember] = []
        for _ in range(self.pop_size):
            population.append(self._perturb(seed, initial_result))
            if self._search_over:
                break
        local_elites = list(population)
        global_elite = max(population + [seed], key=lambda m: m.result.rank_key())
        if global_elite.result.succeeded or self._search_over:
            return global_elite.result
        velocities = self.rng.uniform(size=(len(population), num_words))

        for i in range(self.max_iters):
            omega = (self.omega_1 - self.omega_2) * (self.max_iters - i) / self.max_iters + self.omega_2
            c1 = self.c1_origin - i / self.max_iters * (self.c1_origin - self.c2_origin)
            c2 = self.c2_origin + i / self.max_iters * (self.c1_origin - self.c2_origin)

            moved = []
            for k, particle in enumerate(population):
                velocities[k] = update_velocity(
                    velocities[k], particle.words, local_elites[k].words, global_elite.words, omega
                )
                text = particle.attacked_text
                if self.rng.uniform() < c1:
                    text = self.turn(local_elites[k].attacked_text, text, velocities[k], original_text)
                if self.rng.uniform() < c2:
                    text = self.turn(global_elite.attacked_text, text, velocities[k], original_text)
                moved.append(text)

            results, self._search_over = self.get_goal_results(moved)
            population = [PopulationMember(r.attacked_text, r) for r in results] + population[len(results):]
            top = max(population, key=lambda m: m.result.rank_key())
            if self._search_over or top.result.succeeded:
                if top.result.rank_key() > global_elite.result.rank_key():
                    global_elite = top
                break

            for k, particle in enumerate(population):
                if self.rng.uniform() < 1.0 - 2.0 * self._change_ratio(particle.attacked_text, original_text):
                    population[k] = self._perturb(particle, initial_result)
                if self._search_over:
                    break

            for k, particle in enumerate(population):
                if particle.score > local_elites[k].score:
                    local_elites[k] = particle
            top = max(population, key=lambda m: m.result.rank_key())
            if top.result.rank_key() > global_elite.result.rank_key():
                global_elite = top
            logger.debug("PSO iteration %d: global best %.4f", i, global_elite.score)
            if global_elite.result.succeeded or self._search_over:
                break
        return global_elite.result

    def extra_repr_keys(self) -> List[str]:
        return ["pop_size", "max_iters"]

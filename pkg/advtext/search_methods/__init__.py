from advtext.search_methods.base import PopulationMember, SearchMethod, best_result, selection_probabilities
from advtext.search_methods.beam import BeamSearch, GreedySearch
from advtext.search_methods.genetic import GeneticAlgorithm, ImprovedGeneticAlgorithm
from advtext.search_methods.greedy_wir import GreedyWordSwapWIR, WirMethod
from advtext.search_methods.pso import ParticleSwarmOptimization, normalize_gains, update_velocity

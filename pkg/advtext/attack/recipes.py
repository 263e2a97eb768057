"""Named attack assemblies.

Recipes whose published form relies on a language model or sentence
encoder carry a `-lite` suffix: the remaining components and every
numeric parameter are unchanged.
"""
import logging
import math
from typing import Callable, Dict, NamedTuple, Optional

from advtext.attack.attack import Attack
from advtext.constraints import (
    InputColumnModification,
    LevenshteinEditDistance,
    MaxWordsPerturbed,
    MinWordLength,
    PartOfSpeech,
    RepeatModification,
    StopwordModification,
    ThoughtVector,
    WordEmbeddingDistance,
)
from advtext.core.component import BuildContext
from advtext.core.errors import UnknownComponentError, UnsupportedComponentError
from advtext.goal_functions import InputReduction, MinimizeBleu, NonOverlappingOutput, UntargetedClassification
from advtext.search_methods import (
    BeamSearch,
    GeneticAlgorithm,
    GreedySearch,
    GreedyWordSwapWIR,
    ImprovedGeneticAlgorithm,
    ParticleSwarmOptimization,
)
from advtext.transformations import (
    CompositeTransformation,
    WordDeletion,
    WordSwapEmbedding,
    WordSwapGradientBased,
    WordSwapHomoglyphSwap,
    WordSwapHowNet,
    WordSwapInflections,
    WordSwapNeighboringCharacterSwap,
    WordSwapQWERTY,
    WordSwapRandomCharacterDeletion,
    WordSwapRandomCharacterInsertion,
    WordSwapRandomCharacterSubstitution,
    WordSwapWordNet,
)

logger = logging.getLogger(__name__)


class Recipe(NamedTuple):
    name: str
    description: str
    build: Callable[[BuildContext], Attack]


def _stopwords(ctx: BuildContext) -> StopwordModification:
    return StopwordModification(ctx.resources.stopwords)


def _goal(cls, ctx: BuildContext, **kwargs):
    return cls(ctx.model, query_budget=ctx.query_budget, use_cache=ctx.use_cache, **kwargs)


def _embeddings(ctx: BuildContext, context: str):
    return ctx.resources.require("embeddings", context)


def deepwordbug(ctx: BuildContext) -> Attack:
    transformation = CompositeTransformation([
        WordSwapNeighboringCharacterSwap(),
        WordSwapRandomCharacterSubstitution(),
        WordSwapRandomCharacterDeletion(),
        WordSwapRandomCharacterInsertion(),
    ])
    constraints = [LevenshteinEditDistance(30), RepeatModification(), _stopwords(ctx)]
    return Attack(_goal(UntargetedClassification, ctx), constraints, transformation, GreedyWordSwapWIR("unk"), ctx.use_cache)


def textfooler_lite(ctx: BuildContext) -> Attack:
    embeddings = _embeddings(ctx, "textfooler-lite")
    constraints = [
        WordEmbeddingDistance(embeddings, min_cos_sim=0.5),
        PartOfSpeech(ctx.resources.require("pos_lexicon", "textfooler-lite"), allow_verb_noun_swap=True),
        RepeatModification(),
        _stopwords(ctx),
        InputColumnModification(["premise", "hypothesis"], {"premise"}),
    ]
    transformation = WordSwapEmbedding(embeddings, max_candidates=50)
    return Attack(_goal(UntargetedClassification, ctx), constraints, transformation, GreedyWordSwapWIR("delete"), ctx.use_cache)


def alzantot_lite(ctx: BuildContext) -> Attack:
    embeddings = _embeddings(ctx, "alzantot-lite")
    constraints = [
        MaxWordsPerturbed(max_percent=0.2),
        WordEmbeddingDistance(embeddings, max_mse_dist=0.5, compare_against_original=False),
        RepeatModification(),
        _stopwords(ctx),
        InputColumnModification(["premise", "hypothesis"], {"premise"}),
    ]
    search = GeneticAlgorithm(pop_size=60, max_iters=20, temp=0.3, give_up_if_no_improvement=False)
    return Attack(_goal(UntargetedClassification, ctx), constraints, WordSwapEmbedding(embeddings, max_candidates=8), search, ctx.use_cache)


def fast_alzantot_lite(ctx: BuildContext) -> Attack:
    embeddings = _embeddings(ctx, "fast-alzantot-lite")
    constraints = [
        MaxWordsPerturbed(max_percent=0.2),
        WordEmbeddingDistance(embeddings, max_mse_dist=0.5),
        RepeatModification(),
        _stopwords(ctx),
    ]
    search = GeneticAlgorithm(pop_size=60, max_iters=20, temp=0.3, give_up_if_no_improvement=False)
    return Attack(_goal(UntargetedClassification, ctx), constraints, WordSwapEmbedding(embeddings, max_candidates=8), search, ctx.use_cache)


def iga_lite(ctx: BuildContext) -> Attack:
    embeddings = _embeddings(ctx, "iga-lite")
    constraints = [
        _stopwords(ctx),
        MaxWordsPerturbed(max_percent=0.2),
        WordEmbeddingDistance(embeddings, max_mse_dist=0.5, compare_against_original=False),
    ]
    search = ImprovedGeneticAlgorithm(pop_size=60, max_iters=20, max_replace_times_per_index=5, give_up_if_no_improvement=False)
    return Attack(_goal(UntargetedClassification, ctx), constraints, WordSwapEmbedding(embeddings, max_candidates=50), search, ctx.use_cache)


def input_reduction(ctx: BuildContext) -> Attack:
    constraints = [RepeatModification(), _stopwords(ctx)]
    goal = _goal(InputReduction, ctx, maximizable=True)
    return Attack(goal, constraints, WordDeletion(), GreedyWordSwapWIR("delete"), ctx.use_cache)


def kuleshov_lite(ctx: BuildContext) -> Attack:
    embeddings = _embeddings(ctx, "kuleshov-lite")
    constraints = [
        MaxWordsPerturbed(max_percent=0.5),
        ThoughtVector(embeddings, metric="max_euclidean", threshold=-0.2, window_size=math.inf),
        RepeatModification(),
        _stopwords(ctx),
    ]
    return Attack(_goal(UntargetedClassification, ctx), constraints, WordSwapEmbedding(embeddings, max_candidates=15), GreedySearch(), ctx.use_cache)


def hotflip(ctx: BuildContext) -> Attack:
    embeddings = _embeddings(ctx, "hotflip")
    constraints = [
        MaxWordsPerturbed(max_num_words=2),
        WordEmbeddingDistance(embeddings, min_cos_sim=0.8),
        PartOfSpeech(ctx.resources.require("pos_lexicon", "hotflip"), allow_verb_noun_swap=True),
        RepeatModification(),
        _stopwords(ctx),
    ]
    transformation = WordSwapGradientBased(ctx.model, top_n=1)
    return Attack(_goal(UntargetedClassification, ctx), constraints, transformation, BeamSearch(beam_width=10), ctx.use_cache)


def morpheus(ctx: BuildContext) -> Attack:
    transformation = WordSwapInflections(ctx.resources.require("inflections", "morpheus"))
    goal = _goal(MinimizeBleu, ctx, target_bleu=0.0)
    return Attack(goal, [RepeatModification(), _stopwords(ctx)], transformation, GreedySearch(), ctx.use_cache)


def pruthi(ctx: BuildContext) -> Attack:
    transformation = CompositeTransformation([
        WordSwapNeighboringCharacterSwap(random_one=False),
        WordSwapRandomCharacterDeletion(random_one=False),
        WordSwapRandomCharacterInsertion(random_one=False),
        WordSwapQWERTY(ctx.resources.charmaps),
    ])
    constraints = [MaxWordsPerturbed(max_num_words=1), MinWordLength(4), _stopwords(ctx), RepeatModification()]
    return Attack(_goal(UntargetedClassification, ctx), constraints, transformation, GreedySearch(), ctx.use_cache)


def pso(ctx: BuildContext) -> Attack:
    transformation = WordSwapHowNet(ctx.resources.require("sememes", "pso"), ctx.resources.pos_lexicon, max_candidates=-1)
    constraints = [
        RepeatModification(),
        _stopwords(ctx),
        InputColumnModification(["premise", "hypothesis"], {"premise"}),
    ]
    search = ParticleSwarmOptimization(pop_size=60, max_iters=20)
    return Attack(_goal(UntargetedClassification, ctx), constraints, transformation, search, ctx.use_cache)


def pwws(ctx: BuildContext) -> Attack:
    transformation = WordSwapWordNet(ctx.resources.require("thesaurus", "pwws"))
    constraints = [RepeatModification(), _stopwords(ctx)]
    return Attack(_goal(UntargetedClassification, ctx), constraints, transformation, GreedyWordSwapWIR("pwws"), ctx.use_cache)


def seq2sick(ctx: BuildContext) -> Attack:
    transformation = WordSwapEmbedding(_embeddings(ctx, "seq2sick"), max_candidates=50)
    constraints = [LevenshteinEditDistance(30), RepeatModification(), _stopwords(ctx)]
    return Attack(_goal(NonOverlappingOutput, ctx), constraints, transformation, GreedyWordSwapWIR("unk"), ctx.use_cache)


def textbugger_lite(ctx: BuildContext) -> Attack:
    transformation = CompositeTransformation([
        WordSwapRandomCharacterInsertion(random_one=True),
        WordSwapRandomCharacterDeletion(random_one=True),
        WordSwapNeighboringCharacterSwap(random_one=True),
        WordSwapHomoglyphSwap(ctx.resources.charmaps),
        WordSwapEmbedding(_embeddings(ctx, "textbugger-lite"), max_candidates=5),
    ])
    constraints = [RepeatModification(), _stopwords(ctx)]
    return Attack(_goal(UntargetedClassification, ctx), constraints, transformation, GreedyWordSwapWIR("unk"), ctx.use_cache)


RECIPES: Dict[str, Recipe] = {
    recipe.name: recipe
    for recipe in [
        Recipe("deepwordbug", "greedy-WIR character edits within Levenshtein distance 30", deepwordbug),
        Recipe("textfooler-lite", "embedding swaps ranked by deletion importance", textfooler_lite),
        Recipe("alzantot-lite", "genetic search over embedding swaps", alzantot_lite),
        Recipe("fast-alzantot-lite", "genetic search comparing embeddings with the original", fast_alzantot_lite),
        Recipe("iga-lite", "improved genetic search over embedding swaps", iga_lite),
        Recipe("input-reduction", "deletes words while the label holds", input_reduction),
        Recipe("kuleshov-lite", "greedy embedding swaps under a thought-vector constraint", kuleshov_lite),
        Recipe("hotflip", "gradient-ranked swaps with beam search (white-box)", hotflip),
        Recipe("morpheus", "inflection swaps minimising BLEU of a translation", morpheus),
        Recipe("pruthi", "one keyboard-typo word of at least four letters", pruthi),
        Recipe("pso", "particle swarm over sememe-lexicon swaps", pso),
        Recipe("pwws", "thesaurus swaps ranked by saliency-weighted gain", pwws),
        Recipe("seq2sick", "embedding swaps until no translated word overlaps", seq2sick),
        Recipe("textbugger-lite", "character edits, homoglyphs and embedding swaps", textbugger_lite),
    ]
}

# published recipes we cannot assemble, with the component they need
UNSUPPORTED_RECIPES: Dict[str, str] = {
    "bae": "WordSwapMaskedLM",
    "bert-attack": "WordSwapMaskedLM",
    "textfooler": "UniversalSentenceEncoder",
    "alzantot": "GoogleLanguageModel",
    "fast-alzantot": "LearningToWriteLanguageModel",
    "kuleshov": "GPT2",
    "textbugger": "UniversalSentenceEncoder",
}


def build_recipe(
    name: str,
    model,
    resources=None,
    query_budget: Optional[int] = None,
    use_cache: bool = True,
) -> Attack:
    if name in UNSUPPORTED_RECIPES:
        raise UnsupportedComponentError(UNSUPPORTED_RECIPES[name], context=f"recipe {name}")
    if name not in RECIPES:
        raise UnknownComponentError(f"Unknown recipe {name!r}; choose from {', '.join(sorted(RECIPES))}")
    context = BuildContext(model=model, resources=resources, query_budget=query_budget, use_cache=use_cache)
    attack = RECIPES[name].build(context)
    logger.info("Built recipe %s", name)
    return attack

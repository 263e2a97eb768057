"""Component registry shared by the prototype parser and the command line.

Command-line tokens read `name[:key=value[,key=value...]]`; the
composite transformation takes `members=token+token`.
"""
import ast
import math
from typing import Any, Dict, List, Optional, Sequence, Tuple, Type

from advtext.attack.attack import Attack
from advtext.constraints import (
    BLEU,
    ChrF,
    InputColumnModification,
    LevenshteinEditDistance,
    MaxWordIndexModification,
    MaxWordsPerturbed,
    MinWordLength,
    PartOfSpeech,
    RepeatModification,
    StopwordModification,
    ThoughtVector,
    WordEmbeddingDistance,
)
from advtext.core.component import BuildContext, Component
from advtext.core.errors import UnknownComponentError, UnsupportedComponentError, UsageError
from advtext.goal_functions import (
    InputReduction,
    MinimizeBleu,
    NonOverlappingOutput,
    TargetedClassification,
    UntargetedClassification,
)
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
    WordInnerSwapRandom,
    WordInsertionRandomSynonym,
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

GOAL_FUNCTIONS: Dict[str, Type[Component]] = {
    "untargeted-classification": UntargetedClassification,
    "targeted-classification": TargetedClassification,
    "input-reduction": InputReduction,
    "non-overlapping-output": NonOverlappingOutput,
    "minimize-bleu": MinimizeBleu,
}

TRANSFORMATIONS: Dict[str, Type[Component]] = {
    "word-swap-embedding": WordSwapEmbedding,
    "word-swap-wordnet": WordSwapWordNet,
    "word-swap-hownet": WordSwapHowNet,
    "word-swap-gradient": WordSwapGradientBased,
    "word-swap-inflections": WordSwapInflections,
    "word-swap-neighboring-character-swap": WordSwapNeighboringCharacterSwap,
    "word-swap-random-character-deletion": WordSwapRandomCharacterDeletion,
    "word-swap-random-character-insertion": WordSwapRandomCharacterInsertion,
    "word-swap-random-character-substitution": WordSwapRandomCharacterSubstitution,
    "word-swap-homoglyph": WordSwapHomoglyphSwap,
    "word-swap-qwerty": WordSwapQWERTY,
    "word-deletion": WordDeletion,
    "word-insertion-random-synonym": WordInsertionRandomSynonym,
    "word-inner-swap-random": WordInnerSwapRandom,
    "composite": CompositeTransformation,
}

CONSTRAINTS: Dict[str, Type[Component]] = {
    "repeat": RepeatModification,
    "stopword": StopwordModification,
    "min-word-length": MinWordLength,
    "max-word-index": MaxWordIndexModification,
    "input-column": InputColumnModification,
    "edit-distance": LevenshteinEditDistance,
    "max-words-perturbed": MaxWordsPerturbed,
    "bleu": BLEU,
    "chrf": ChrF,
    "part-of-speech": PartOfSpeech,
    "embedding": WordEmbeddingDistance,
    "thought-vector": ThoughtVector,
}

SEARCH_METHODS: Dict[str, Type[Component]] = {
    "greedy": GreedySearch,
    "greedy-word-wir": GreedyWordSwapWIR,
    "beam-search": BeamSearch,
    "alzantot": GeneticAlgorithm,
    "improved-genetic-algorithm": ImprovedGeneticAlgorithm,
    "pso": ParticleSwarmOptimization,
}

REGISTRIES = {
    "goal function": GOAL_FUNCTIONS,
    "transformation": TRANSFORMATIONS,
    "constraint": CONSTRAINTS,
    "search method": SEARCH_METHODS,
}

# tokens and class names of language-model-backed components we do not ship
UNSUPPORTED_TOKENS: Dict[str, str] = {
    "word-swap-masked-lm": "WordSwapMaskedLM",
    "use": "UniversalSentenceEncoder",
    "muse": "MultilingualUniversalSentenceEncoder",
    "infer-sent": "InferSent",
    "bert": "BERT",
    "bert-score": "BERTScore",
    "lang-tool": "LanguageTool",
    "goog-lm": "GoogleLanguageModel",
    "gpt2": "GPT2",
    "learning-to-write": "LearningToWriteLanguageModel",
    "meteor": "METEOR",
}
UNSUPPORTED_CLASSES = frozenset(UNSUPPORTED_TOKENS.values())

COMPONENT_CLASSES: Dict[str, Type[Component]] = {
    cls.__name__: cls for registry in REGISTRIES.values() for cls in registry.values()
}


def parse_scalar(raw: str) -> Any:
    """Literal parameter value: numbers, booleans, None, containers, +-inf, else the bare string."""
    raw = raw.strip()
    if raw in ("inf", "-inf"):
        return math.inf if raw == "inf" else -math.inf
    try:
        return ast.literal_eval(raw)
    except (ValueError, SyntaxError):
        return raw


def parse_token(token: str) -> Tuple[str, Dict[str, Any]]:
    name, _, arguments = token.strip().partition(":")
    params: Dict[str, Any] = {}
    if not name:
        raise UsageError(f"Empty component token {token!r}")
    for argument in filter(None, (a.strip() for a in arguments.split(","))):
        key, sep, value = argument.partition("=")
        if not sep or not key.strip():
            raise UsageError(f"Expected key=value in {token!r}, got {argument!r}")
        params[key.strip()] = value.strip() if key.strip() == "members" else parse_scalar(value)
    return name, params


def build_component(kind: str, token: str, context: BuildContext) -> Component:
    """Instantiate a component of `kind` from a command-line token."""
    name, params = parse_token(token)
    if name in UNSUPPORTED_TOKENS:
        raise UnsupportedComponentError(UNSUPPORTED_TOKENS[name], context=f"--{kind.replace(' ', '-')} {name}")
    registry = REGISTRIES[kind]
    if name not in registry:
        raise UnknownComponentError(f"Unknown {kind} {name!r}; choose from {', '.join(sorted(registry))}")
    cls = registry[name]
    if cls is CompositeTransformation:
        members = params.pop("members", "")
        if params or not members:
            raise UsageError("composite takes exactly members=token+token")
        return CompositeTransformation([build_component(kind, m, context) for m in members.split("+")])
    return instantiate(cls, params, context)


def instantiate(cls: Type[Component], params: Dict[str, Any], context: BuildContext) -> Component:
    try:
        return cls.from_params(params, context)
    except TypeError as exc:
        raise UsageError(f"Bad parameters for {cls.__name__}: {exc}")


def build_by_class_name(name: str, params: Dict[str, Any], items: List[Component], context: BuildContext) -> Component:
    """Instantiate a component from its prototype name and printed parameters."""
    if name in UNSUPPORTED_CLASSES:
        raise UnsupportedComponentError(name)
    cls: Optional[Type[Component]] = COMPONENT_CLASSES.get(name)
    if cls is None:
        raise UnknownComponentError(f"Unknown component {name!r}")
    if cls is CompositeTransformation:
        return CompositeTransformation(items)
    return instantiate(cls, params, context)


def build_attack_from_tokens(
    context: BuildContext,
    transformation: str,
    goal_function: Optional[str] = None,
    constraints: Sequence[str] = (),
    search_method: Optional[str] = None,
) -> Attack:
    """Assemble an attack from command-line tokens; unset components take their defaults."""
    return Attack(
        build_component("goal function", goal_function or "untargeted-classification", context),
        [build_component("constraint", token, context) for token in constraints],
        build_component("transformation", transformation, context),
        build_component("search method", search_method or "greedy-word-wir", context),
        use_cache=context.use_cache,
    )

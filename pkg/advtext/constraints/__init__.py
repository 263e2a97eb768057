from advtext.constraints.base import Constraint, PreTransformationConstraint, modifiable_indices
from advtext.constraints.grammaticality import PartOfSpeech
from advtext.constraints.overlap import BLEU, ChrF, LevenshteinEditDistance, MaxWordsPerturbed
from advtext.constraints.pre_transformation import (
    InputColumnModification,
    MaxWordIndexModification,
    MinWordLength,
    RepeatModification,
    StopwordModification,
)
from advtext.constraints.semantics import ThoughtVector, WordEmbeddingDistance

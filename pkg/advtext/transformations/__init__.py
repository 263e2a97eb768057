from advtext.transformations.base import (
    CompositeTransformation,
    Transformation,
    TransformationContext,
    WordSwap,
    dedupe,
)
from advtext.transformations.character import (
    WordSwapHomoglyphSwap,
    WordSwapNeighboringCharacterSwap,
    WordSwapQWERTY,
    WordSwapRandomCharacterDeletion,
    WordSwapRandomCharacterInsertion,
    WordSwapRandomCharacterSubstitution,
)
from advtext.transformations.word_edits import WordDeletion, WordInnerSwapRandom, WordInsertionRandomSynonym
from advtext.transformations.word_swaps import (
    WordSwapEmbedding,
    WordSwapGradientBased,
    WordSwapHowNet,
    WordSwapInflections,
    WordSwapLexicon,
    WordSwapWordNet,
)

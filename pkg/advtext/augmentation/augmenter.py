import logging
import math
from typing import Callable, Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd
from tqdm import tqdm

from advtext.constraints import (
    Constraint,
    PreTransformationConstraint,
    RepeatModification,
    StopwordModification,
    WordEmbeddingDistance,
    modifiable_indices,
)
from advtext.core.config import settings
from advtext.core.errors import DatasetError, UnknownComponentError
from advtext.datasets.dataset import Dataset, Example
from advtext.models.attacked_text import AttackedText
from advtext.resources.bundle import ResourceBundle
from advtext.schemas.augmentation import AugmenterConfig
from advtext.transformations import (
    CompositeTransformation,
    Transformation,
    TransformationContext,
    WordDeletion,
    WordInnerSwapRandom,
    WordInsertionRandomSynonym,
    WordSwapEmbedding,
    WordSwapNeighboringCharacterSwap,
    WordSwapRandomCharacterDeletion,
    WordSwapRandomCharacterInsertion,
    WordSwapRandomCharacterSubstitution,
    WordSwapWordNet,
)

logger = logging.getLogger(__name__)


class Augmenter:
    """Perturbs a share of each text's words with constraint-checked candidates."""

    def __init__(
        self,
        transformation: Transformation,
        constraints: Sequence[Union[Constraint, PreTransformationConstraint]] = (),
        pct_words_to_swap: float = 0.1,
        transformations_per_example: int = 1,
        seed: int = settings.DEFAULT_SEED,
        max_retries: int = settings.AUGMENT_MAX_RETRIES,
    ):
        if not 0 < pct_words_to_swap <= 1:
            raise ValueError("pct_words_to_swap must be in (0, 1]")
        if transformations_per_example < 1:
            raise ValueError("transformations_per_example must be positive")
        self.transformation = transformation
        self.pre_transformation_constraints = [c for c in constraints if isinstance(c, PreTransformationConstraint)]
        self.constraints = [c for c in constraints if not isinstance(c, PreTransformationConstraint)]
        self.pct_words_to_swap = pct_words_to_swap
        self.transformations_per_example = transformations_per_example
        self.seed = seed
        self.max_retries = max_retries

    def num_words_to_swap(self, num_words: int) -> int:
        return max(1, int(math.floor(self.pct_words_to_swap * num_words + 0.5)))

    def _passes(self, original: AttackedText, current: AttackedText, candidate: AttackedText) -> bool:
        return all(
            c.check(original if c.compare_against_original else current, candidate) for c in self.constraints
        )

    def _perturb(self, original: AttackedText, rng: np.random.Generator) -> Optional[AttackedText]:
        """Change up to k words, visiting allowed indices in random order."""
        allowed = sorted(modifiable_indices(original, self.pre_transformation_constraints))
        target = self.num_words_to_swap(original.num_words)
        context = TransformationContext(rng=rng)
        current, changed = original, 0
        for index in rng.permutation(allowed) if allowed else []:
            if changed == target:
                break
            position = current.current_index_of(int(index))
            if position is None:
                continue
            candidates = self.transformation(
                current,
                indices_to_modify=[position],
                pre_transformation_constraints=self.pre_transformation_constraints,
                context=context,
            )
            candidates = [c for c in candidates if self._passes(original, current, c)]
            if candidates:
                current = candidates[int(rng.integers(len(candidates)))]
                changed += 1
        if changed == 0 or not all(c.check(original, current) for c in self.constraints):
            return None
        return current

    def augment(self, text: Union[str, AttackedText], rng: Optional[np.random.Generator] = None) -> List[str]:
        """Up to `transformations_per_example` distinct perturbations of `text`."""
        original = text if isinstance(text, AttackedText) else AttackedText(text)
        rng = rng if rng is not None else np.random.default_rng(self.seed)
        return [t.text for t in self.augment_text(original, rng)]

    def augment_text(self, original: AttackedText, rng: np.random.Generator) -> List[AttackedText]:
        outputs: List[AttackedText] = []
        seen = {original.text}
        for _ in range(self.transformations_per_example):
            for _ in range(self.max_retries):
                perturbed = self._perturb(original, rng)
                if perturbed is not None and perturbed.text not in seen:
                    seen.add(perturbed.text)
                    outputs.append(perturbed)
                    break
        return outputs


class EasyDataAugmenter(Augmenter):
    """Synonym replacement, random insertion, random swap and random deletion.

    Each operation contributes a quarter of the outputs (at least one);
    texts shorter than two words only get synonym replacement.
    """

    def __init__(self, resources: ResourceBundle, pct_words_to_swap: float = 0.1, transformations_per_example: int = 1,
                 seed: int = settings.DEFAULT_SEED, max_retries: int = settings.AUGMENT_MAX_RETRIES):
        thesaurus = resources.require("thesaurus", "eda")
        constraints = [RepeatModification(), StopwordModification(resources.stopwords)]
        per_operation = max(1, math.ceil(transformations_per_example / 4))
        options = dict(pct_words_to_swap=pct_words_to_swap, transformations_per_example=per_operation,
                       seed=seed, max_retries=max_retries)
        self.synonym_replacement = Augmenter(WordSwapWordNet(thesaurus), constraints, **options)
        self.word_count_changing = [
            Augmenter(WordInsertionRandomSynonym(thesaurus), constraints, **options),
            Augmenter(WordInnerSwapRandom(), constraints, **options),
            Augmenter(WordDeletion(), constraints, **options),
        ]
        super().__init__(self.synonym_replacement.transformation, constraints, pct_words_to_swap,
                         transformations_per_example, seed, max_retries)

    def augment_text(self, original: AttackedText, rng: np.random.Generator) -> List[AttackedText]:
        augmenters = [self.synonym_replacement]
        if original.num_words >= 2:
            augmenters += self.word_count_changing
        outputs: List[AttackedText] = []
        for augmenter in augmenters:
            for output in augmenter.augment_text(original, rng):
                if output not in outputs:
                    outputs.append(output)
        order = rng.permutation(len(outputs))
        return [outputs[i] for i in order][: self.transformations_per_example]


def embedding_augmenter(resources: ResourceBundle, **options) -> Augmenter:
    embeddings = resources.require("embeddings", "embedding augmentation")
    constraints = [
        RepeatModification(),
        StopwordModification(resources.stopwords),
        WordEmbeddingDistance(embeddings, min_cos_sim=0.8),
    ]
    return Augmenter(WordSwapEmbedding(embeddings, max_candidates=50), constraints, **options)


def charswap_augmenter(resources: ResourceBundle, **options) -> Augmenter:
    transformation = CompositeTransformation([
        WordSwapNeighboringCharacterSwap(random_one=True),
        WordSwapRandomCharacterSubstitution(random_one=True),
        WordSwapRandomCharacterDeletion(random_one=True),
        WordSwapRandomCharacterInsertion(random_one=True),
    ])
    constraints = [RepeatModification(), StopwordModification(resources.stopwords)]
    return Augmenter(transformation, constraints, **options)


AUGMENTATION_RECIPES: Dict[str, Callable[..., Augmenter]] = {
    "embedding": embedding_augmenter,
    "eda": EasyDataAugmenter,
    "charswap": charswap_augmenter,
}


def build_augmenter(config: AugmenterConfig, resources: ResourceBundle) -> Augmenter:
    if config.recipe not in AUGMENTATION_RECIPES:
        raise UnknownComponentError(
            f"Unknown augmentation recipe {config.recipe!r}; choose from {', '.join(AUGMENTATION_RECIPES)}"
        )
    return AUGMENTATION_RECIPES[config.recipe](
        resources,
        pct_words_to_swap=config.pct_words_to_swap,
        transformations_per_example=config.transformations_per_example,
        seed=config.seed,
        max_retries=config.max_retries,
    )


def augment_dataset(
    dataset: Dataset,
    augmenter: Augmenter,
    include_original: bool = True,
    progress: bool = False,
) -> Dataset:
    """Each example followed by its augmentations, labels copied verbatim."""
    examples: List[Example] = []
    for index, example in enumerate(tqdm(dataset, disable=not progress, desc="augment")):
        if include_original:
            examples.append(example)
        rng = np.random.default_rng([augmenter.seed, index])
        for output in augmenter.augment_text(example.attacked_text(), rng):
            text = output.text if isinstance(example.input, str) else output.column_texts
            examples.append(Example(text, example.output))
    logger.info("Augmented %d examples into %d", len(dataset), len(examples))
    return dataset.replace_examples(examples)


def augment_frame(
    frame: pd.DataFrame,
    input_column: str,
    augmenter: Augmenter,
    include_original: bool = True,
    progress: bool = False,
) -> pd.DataFrame:
    """Augment one column of a table; every other column is copied from the source row."""
    if input_column not in frame.columns:
        raise DatasetError(f"No column {input_column!r}; found {', '.join(map(str, frame.columns))}")
    rows = []
    records = frame.to_dict(orient="records")
    for index, row in enumerate(tqdm(records, disable=not progress, desc="augment")):
        if include_original:
            rows.append(row)
        rng = np.random.default_rng([augmenter.seed, index])
        for text in augmenter.augment(str(row[input_column]), rng):
            rows.append({**row, input_column: text})
    logger.info("Augmented %d rows into %d", len(records), len(rows))
    return pd.DataFrame(rows, columns=frame.columns)

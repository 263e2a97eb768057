import math
from typing import List, Optional

import numpy as np

from advtext.constraints.base import Constraint
from advtext.core.config import settings
from advtext.models.attacked_text import AttackedText
from advtext.resources.embeddings import EmbeddingStore, cosine_similarity


class WordEmbeddingDistance(Constraint):
    """Bounds how far each swapped word may move in embedding space."""

    def __init__(
        self,
        embeddings: EmbeddingStore,
        embedding_type: str = settings.EMBEDDING_TYPE,
        include_unknown_words: bool = True,
        min_cos_sim: Optional[float] = None,
        max_mse_dist: Optional[float] = None,
        cased: bool = False,
        compare_against_original: bool = True,
    ):
        super().__init__(compare_against_original)
        if (min_cos_sim is None) == (max_mse_dist is None):
            raise ValueError("WordEmbeddingDistance needs exactly one of min_cos_sim and max_mse_dist")
        self.embeddings = embeddings
        self.embedding_type = embedding_type
        self.include_unknown_words = include_unknown_words
        self.min_cos_sim = min_cos_sim
        self.max_mse_dist = max_mse_dist
        self.cased = cased

    @classmethod
    def from_params(cls, params, context):
        return cls(context.resources.require("embeddings", cls.__name__), **params)

    def word_pair_allowed(self, reference_word: str, candidate_word: str) -> bool:
        if not self.cased:
            reference_word, candidate_word = reference_word.lower(), candidate_word.lower()
        if reference_word not in self.embeddings or candidate_word not in self.embeddings:
            return self.include_unknown_words
        if self.min_cos_sim is not None:
            return self.embeddings.cos_sim(reference_word, candidate_word) >= self.min_cos_sim
        return self.embeddings.mse_dist(reference_word, candidate_word) <= self.max_mse_dist

    def _check_constraint(self, reference: AttackedText, candidate: AttackedText) -> bool:
        return all(
            self.word_pair_allowed(reference.words[i], candidate.words[j])
            for i, j in reference.changed_word_pairs(candidate)
        )

    def extra_repr_keys(self) -> List[str]:
        metric = "min_cos_sim" if self.min_cos_sim is not None else "max_mse_dist"
        return ["embedding_type", metric, "cased", "include_unknown_words"] + super().extra_repr_keys()


class ThoughtVector(Constraint):
    """Compares mean word embeddings of the reference and candidate.

    `cosine` passes when the cosine similarity is at least `threshold`;
    `max_euclidean` passes when minus the Euclidean distance is at least
    `threshold`.
    """

    METRICS = ("cosine", "max_euclidean")

    def __init__(
        self,
        embeddings: EmbeddingStore,
        embedding_type: str = settings.EMBEDDING_TYPE,
        metric: str = "max_euclidean",
        threshold: float = -0.2,
        window_size: float = math.inf,
        skip_text_shorter_than_window: bool = False,
        compare_against_original: bool = True,
    ):
        super().__init__(compare_against_original)
        if metric not in self.METRICS:
            raise ValueError(f"Unknown thought vector metric {metric!r}")
        self.embeddings = embeddings
        self.embedding_type = embedding_type
        self.metric = metric
        self.threshold = threshold
        self.window_size = window_size
        self.skip_text_shorter_than_window = skip_text_shorter_than_window

    @classmethod
    def from_params(cls, params, context):
        return cls(context.resources.require("embeddings", cls.__name__), **params)

    def thought_vector(self, words: List[str]) -> np.ndarray:
        vectors = [self.embeddings.vector(w.lower()) for w in words]
        vectors = [v for v in vectors if v is not None]
        if not vectors:
            return np.zeros(self.embeddings.dim)
        return np.mean(vectors, axis=0)

    def similarity(self, reference_words: List[str], candidate_words: List[str]) -> float:
        u, v = self.thought_vector(reference_words), self.thought_vector(candidate_words)
        if self.metric == "cosine":
            return cosine_similarity(u, v)
        return -float(np.linalg.norm(u - v))

    def _check_constraint(self, reference: AttackedText, candidate: AttackedText) -> bool:
        if self.skip_text_shorter_than_window and reference.num_words < self.window_size:
            return True
        pairs = reference.changed_word_pairs(candidate)
        i, j = pairs[0] if pairs else (0, 0)
        reference_words = reference.words_window_around_index(i, self.window_size)
        candidate_words = candidate.words_window_around_index(j, self.window_size)
        return self.similarity(reference_words, candidate_words) >= self.threshold

    def extra_repr_keys(self) -> List[str]:
        return [
            "embedding_type",
            "metric",
            "threshold",
            "window_size",
            "skip_text_shorter_than_window",
        ] + super().extra_repr_keys()

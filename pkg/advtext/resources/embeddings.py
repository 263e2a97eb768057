import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from advtext.core.config import settings
from advtext.core.errors import ResourceFormatError

logger = logging.getLogger(__name__)

_BLOCK_SIZE = 1024


def cosine_similarity(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine of two vectors; 0.0 when either is the zero vector."""
    norm = float(np.linalg.norm(u) * np.linalg.norm(v))
    if norm == 0.0:
        return 0.0
    return float(np.clip(np.dot(u, v) / norm, -1.0, 1.0))


class EmbeddingStore:
    """Word vectors with an exact cosine nearest-neighbour index built at load."""

    def __init__(
        self,
        words: Sequence[str],
        vectors: np.ndarray,
        nn_index_size: Optional[int] = None,
        embedding_type: str = settings.EMBEDDING_TYPE,
    ):
        vectors = np.asarray(vectors, dtype=np.float64)
        if vectors.ndim != 2 or vectors.shape[0] != len(words):
            raise ValueError("Expected one vector per word")
        self.words: List[str] = list(words)
        self.vectors = vectors
        self.embedding_type = embedding_type
        self.word2index: Dict[str, int] = {w: i for i, w in enumerate(self.words)}
        norms = np.linalg.norm(vectors, axis=1, keepdims=True)
        self._unit = np.divide(vectors, norms, out=np.zeros_like(vectors), where=norms > 0)
        size = settings.NN_INDEX_SIZE if nn_index_size is None else nn_index_size
        self.nn_index_size = max(0, min(size, len(self.words) - 1))
        self._nn_ids, self._nn_sims = self._build_index(self.nn_index_size)

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self.word2index

    def _ranked_neighbours(self, rows: np.ndarray, k: int) -> Tuple[np.ndarray, np.ndarray]:
        sims = np.clip(self._unit[rows] @ self._unit.T, -1.0, 1.0)
        sims[np.arange(len(rows)), rows] = -np.inf
        # stable sort keeps lower vocabulary ids first among equal similarities
        order = np.argsort(-sims, axis=1, kind="stable")[:, :k]
        return order, np.take_along_axis(sims, order, axis=1)

    def _build_index(self, k: int) -> Tuple[np.ndarray, np.ndarray]:
        ids = np.zeros((len(self.words), k), dtype=np.int64)
        sims = np.zeros((len(self.words), k), dtype=np.float64)
        if k == 0:
            return ids, sims
        for start in range(0, len(self.words), _BLOCK_SIZE):
            rows = np.arange(start, min(start + _BLOCK_SIZE, len(self.words)))
            ids[rows], sims[rows] = self._ranked_neighbours(rows, k)
        logger.debug("Built %d-NN index over %d words", k, len(self.words))
        return ids, sims

    def vector(self, word: str) -> Optional[np.ndarray]:
        index = self.word2index.get(word)
        return None if index is None else self.vectors[index]

    def nearest_neighbors(self, word: str, k: int) -> List[Tuple[str, float]]:
        index = self.word2index.get(word)
        if index is None or k <= 0:
            return []
        if k <= self.nn_index_size:
            ids, sims = self._nn_ids[index, :k], self._nn_sims[index, :k]
        else:
            k = min(k, len(self.words) - 1)
            ids, sims = self._ranked_neighbours(np.array([index]), k)
            ids, sims = ids[0], sims[0]
        return [(self.words[i], float(s)) for i, s in zip(ids, sims)]

    def cos_sim(self, a: str, b: str) -> Optional[float]:
        u, v = self.vector(a), self.vector(b)
        if u is None or v is None:
            return None
        return cosine_similarity(u, v)

    def mse_dist(self, a: str, b: str) -> Optional[float]:
        """Squared Euclidean distance between two word vectors."""
        u, v = self.vector(a), self.vector(b)
        if u is None or v is None:
            return None
        return float(np.sum((u - v) ** 2))

    @classmethod
    def load(cls, path: str, nn_index_size: Optional[int] = None) -> "EmbeddingStore":
        words: List[str] = []
        rows: List[List[float]] = []
        seen: Dict[str, int] = {}
        dim: Optional[int] = None
        with open(path, encoding="utf-8") as f:
            for line_number, line in enumerate(f, start=1):
                fields = line.split()
                if not fields:
                    continue
                if line_number == 1 and len(fields) == 2 and all(x.isdigit() for x in fields):
                    dim = int(fields[1])
                    continue
                word, values = fields[0], fields[1:]
                if not values:
                    raise ResourceFormatError(path, line_number, f"no vector for {word!r}")
                try:
                    vector = [float(x) for x in values]
                except ValueError:
                    raise ResourceFormatError(path, line_number, "vector components must be decimal numbers")
                if dim is None:
                    dim = len(vector)
                if len(vector) != dim:
                    raise ResourceFormatError(path, line_number, f"expected {dim} components, got {len(vector)}")
                if word in seen:
                    raise ResourceFormatError(path, line_number, f"duplicate word {word!r} (first on line {seen[word]})")
                seen[word] = line_number
                words.append(word)
                rows.append(vector)
        matrix = np.array(rows, dtype=np.float64).reshape(len(rows), dim or 0)
        logger.info("Loaded %d embeddings of dimension %d from %s", len(words), dim or 0, path)
        return cls(words, matrix, nn_index_size=nn_index_size)

    def dump(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as f:
            for line in self._lines():
                f.write(line + "\n")

    def _lines(self) -> Iterable[str]:
        for word, vector in zip(self.words, self.vectors):
            yield " ".join([word] + [repr(float(x)) for x in vector])

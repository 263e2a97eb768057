import logging
import zlib
from collections import Counter
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import ValidationError

from advtext.core.config import settings
from advtext.core.errors import ModelFormatError, TrainingError
from advtext.models.attacked_text import AttackedText
from advtext.schemas.model import LinearModelFile
from advtext.schemas.training import EpochMetrics, TrainConfig
from advtext.victims.base import ClassifierModel

logger = logging.getLogger(__name__)


def softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=-1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=-1, keepdims=True)


def char_ngrams(word: str, ngram_range: Tuple[int, int]) -> List[str]:
    padded = f"<{word}>"
    low, high = ngram_range
    return [padded[i:i + n] for n in range(low, high + 1) for i in range(len(padded) - n + 1)]


class LinearTextClassifier(ClassifierModel):
    """Softmax regression over word and hashed character n-gram counts.

    Every word contributes additively: its vocabulary feature (if any) plus
    one count per character n-gram of `<word>` hashed into `num_buckets`
    buckets. The reserved unk token contributes nothing.
    """

    is_white_box = True

    def __init__(
        self,
        vocabulary: Sequence[str],
        label_names: Sequence[str],
        weights: Optional[np.ndarray] = None,
        bias: Optional[np.ndarray] = None,
        ngram_range: Tuple[int, int] = (2, 4),
        num_buckets: int = settings.NGRAM_BUCKETS,
        unk_token: str = settings.UNK_TOKEN,
        model_id: str = "linear",
    ):
        self.vocabulary = [w.lower() for w in vocabulary]
        self.word2id: Dict[str, int] = {w: i for i, w in enumerate(self.vocabulary)}
        self.label_names = list(label_names)
        self.ngram_range = tuple(ngram_range)
        self.num_buckets = num_buckets
        self.unk_token = unk_token.lower()
        self.model_id = model_id
        shape = (len(self.label_names), self.num_features)
        self.weights = np.zeros(shape) if weights is None else np.asarray(weights, dtype=np.float64).reshape(shape)
        self.bias = np.zeros(len(self.label_names)) if bias is None else np.asarray(bias, dtype=np.float64)
        self.word_features = lru_cache(maxsize=65536)(self._word_features)
        self._vocab_rows: Optional[Tuple[np.ndarray, np.ndarray, np.ndarray]] = None

    @property
    def num_labels(self) -> int:
        return len(self.label_names)

    @property
    def num_features(self) -> int:
        return len(self.vocabulary) + self.num_buckets

    # Features

    def _word_features(self, word: str) -> Tuple[Tuple[int, int], ...]:
        word = word.lower()
        if word == self.unk_token:
            return ()
        counts: Counter = Counter()
        if word in self.word2id:
            counts[self.word2id[word]] += 1
        if self.num_buckets:
            offset = len(self.vocabulary)
            for gram in char_ngrams(word, self.ngram_range):
                counts[offset + zlib.crc32(gram.encode("utf-8")) % self.num_buckets] += 1
        return tuple(sorted(counts.items()))

    def _words(self, text) -> Sequence[str]:
        return text.words if isinstance(text, AttackedText) else AttackedText(text).words

    def featurize(self, texts: Sequence) -> np.ndarray:
        matrix = np.zeros((len(texts), self.num_features))
        for row, text in enumerate(texts):
            for word in self._words(text):
                for feature, count in self.word_features(word):
                    matrix[row, feature] += count
        return matrix

    def word_vector(self, word: str) -> np.ndarray:
        vector = np.zeros(self.num_features)
        for feature, count in self.word_features(word):
            vector[feature] += count
        return vector

    # Prediction

    def logits(self, texts: Sequence) -> np.ndarray:
        return self.featurize(texts) @ self.weights.T + self.bias

    def predict_proba(self, texts: Sequence) -> np.ndarray:
        return softmax(self.logits(texts))

    def loss(self, texts: Sequence, labels: Sequence[int]) -> np.ndarray:
        probs = self.predict_proba(texts)
        return -np.log(np.clip(probs[np.arange(len(labels)), labels], 1e-300, None))

    # Gradients

    def input_gradient(self, text: AttackedText, label: int) -> np.ndarray:
        """d(cross-entropy)/d(features) = W^T (p - e_label)."""
        probs = self.predict_proba([text])[0]
        probs[label] -= 1.0
        return self.weights.T @ probs

    def _vocabulary_rows(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        if self._vocab_rows is None:
            indices: List[int] = []
            counts: List[int] = []
            starts: List[int] = []
            for word in self.vocabulary:
                starts.append(len(indices))
                for feature, count in self.word_features(word):
                    indices.append(feature)
                    counts.append(count)
            self._vocab_rows = (np.array(indices, dtype=np.int64), np.array(counts, dtype=np.float64), np.array(starts, dtype=np.int64))
        return self._vocab_rows

    def word_swap_scores(self, text: AttackedText, label: int, index: int) -> np.ndarray:
        """First-order loss change for swapping word `index` with every vocabulary word."""
        gradient = self.input_gradient(text, label)
        indices, counts, starts = self._vocabulary_rows()
        if len(indices) == 0:
            return np.zeros(len(self.vocabulary))
        new_terms = np.add.reduceat(gradient[indices] * counts, starts) if len(starts) else np.zeros(0)
        return new_terms - float(self.word_vector(text.words[index]) @ gradient)

    def word_swap_loss_gradient(
        self,
        text: AttackedText,
        label: int,
        index: int,
        top_n: Optional[int] = None,
    ) -> List[Tuple[str, float]]:
        """Vocabulary words ranked by first-order loss increase when swapped in at `index`.

        With two labels the ranking matches the exact loss ordering. With more
        labels it is a linearization around the current text and can disagree
        with the exact ordering when the swap moves the logits far.
        """
        word = text.words[index].lower()
        if word not in self.word2id:
            return []
        scores = self.word_swap_scores(text, label, index)
        # descending score, ties by vocabulary id
        order = np.lexsort((np.arange(len(scores)), -scores))
        ranking = [
            (self.vocabulary[i], float(scores[i]))
            for i in order
            if self.vocabulary[i] not in (word, self.unk_token)
        ]
        return ranking if top_n is None else ranking[:top_n]

    def word_importances(self, text: AttackedText, label: int) -> np.ndarray:
        """|f(w_i) . grad| per word, for gradient-ordered search."""
        gradient = self.input_gradient(text, label)
        return np.array([abs(float(self.word_vector(w) @ gradient)) for w in text.words])

    # Persistence

    def to_file_model(self) -> LinearModelFile:
        return LinearModelFile(
            model_id=self.model_id,
            label_names=self.label_names,
            vocabulary=self.vocabulary,
            ngram_range=self.ngram_range,
            num_buckets=self.num_buckets,
            unk_token=self.unk_token,
            weights=self.weights.tolist(),
            bias=self.bias.tolist(),
        )

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.to_file_model().json())
        logger.info("Saved model %s to %s", self.model_id, path)

    @classmethod
    def load(cls, path: str) -> "LinearTextClassifier":
        try:
            spec = LinearModelFile.parse_file(path)
        except (ValidationError, ValueError) as exc:
            raise ModelFormatError(f"Cannot read model file {path}: {exc}")
        return cls(
            spec.vocabulary,
            spec.label_names,
            weights=np.array(spec.weights, dtype=np.float64),
            bias=np.array(spec.bias, dtype=np.float64),
            ngram_range=tuple(spec.ngram_range),
            num_buckets=spec.num_buckets,
            unk_token=spec.unk_token,
            model_id=spec.model_id,
        )


def build_vocabulary(texts: Sequence[str], min_count: int = 1, unk_token: str = settings.UNK_TOKEN) -> List[str]:
    counts = Counter(w.lower() for t in texts for w in AttackedText(t).words)
    counts.pop(unk_token, None)
    return sorted((w for w, c in counts.items() if c >= min_count), key=lambda w: (-counts[w], w))


def accuracy(model: ClassifierModel, texts: Sequence[str], labels: Sequence[int]) -> float:
    if not texts:
        return 0.0
    predictions = model.predict_proba(texts).argmax(axis=1)
    return float(np.mean(predictions == np.asarray(labels)))


def train_classifier(
    texts: Sequence[str],
    labels: Sequence[int],
    config: TrainConfig,
    label_names: Optional[Sequence[str]] = None,
    dev: Optional[Tuple[Sequence[str], Sequence[int]]] = None,
    vocabulary: Optional[Sequence[str]] = None,
    model: Optional[LinearTextClassifier] = None,
    epoch_hook: Optional[Callable[[int, LinearTextClassifier], Optional[Tuple[Sequence[str], Sequence[int]]]]] = None,
) -> Tuple[LinearTextClassifier, List[EpochMetrics]]:
    """Mini-batch gradient descent on softmax cross-entropy.

    `epoch_hook(epoch, model)` runs before each epoch and may return a
    replacement training set for that and later epochs.
    """
    if not texts:
        raise TrainingError("Cannot train on an empty dataset")
    if len(set(labels)) < 2:
        raise TrainingError("Training data must contain at least two labels")
    if label_names is None:
        label_names = [str(i) for i in range(max(labels) + 1)]
    if model is None:
        model = LinearTextClassifier(vocabulary or build_vocabulary(texts), label_names)
    rng = np.random.default_rng(config.seed)
    features = model.featurize(texts)
    targets = np.asarray(labels)
    history: List[EpochMetrics] = []
    best = (-1.0, model.weights.copy(), model.bias.copy(), 0)
    stale = 0
    for epoch in range(1, config.epochs + 1):
        if epoch_hook is not None:
            replacement = epoch_hook(epoch, model)
            if replacement is not None:
                texts, labels = replacement
                features = model.featurize(texts)
                targets = np.asarray(labels)
        onehot = np.eye(model.num_labels)[targets]
        order = rng.permutation(len(targets))
        for start in range(0, len(order), config.batch_size):
            batch = order[start:start + config.batch_size]
            probs = softmax(features[batch] @ model.weights.T + model.bias)
            error = (probs - onehot[batch]) / len(batch)
            model.weights -= config.learning_rate * (error.T @ features[batch])
            model.bias -= config.learning_rate * error.sum(axis=0)
        probs = softmax(features @ model.weights.T + model.bias)
        train_loss = float(-np.mean(np.log(np.clip(probs[np.arange(len(targets)), targets], 1e-300, None))))
        metrics = EpochMetrics(
            epoch=epoch,
            train_loss=train_loss,
            train_accuracy=float(np.mean(probs.argmax(axis=1) == targets)),
            dev_accuracy=accuracy(model, dev[0], dev[1]) if dev else None,
        )
        history.append(metrics)
        logger.info(
            "epoch %d: loss %.4f train acc %.4f%s",
            epoch, metrics.train_loss, metrics.train_accuracy,
            "" if metrics.dev_accuracy is None else f" dev acc {metrics.dev_accuracy:.4f}",
        )
        if config.early_stopping_patience and dev:
            if metrics.dev_accuracy > best[0]:
                best, stale = (metrics.dev_accuracy, model.weights.copy(), model.bias.copy(), epoch), 0
            else:
                stale += 1
                if stale >= config.early_stopping_patience:
                    logger.info("Early stopping after epoch %d", epoch)
                    break
    if config.early_stopping_patience and dev and history:
        logger.info("Restoring weights of epoch %d (dev acc %.4f)", best[3], best[0])
        model.weights, model.bias = best[1], best[2]
    return model, history

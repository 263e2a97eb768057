import math
import re
from collections import OrderedDict
from typing import TYPE_CHECKING, Dict, FrozenSet, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from advtext.core.errors import TextEditError

if TYPE_CHECKING:
    from advtext.models.pos import PosTag
    from advtext.resources.lexicons import PosLexicon

WORD_PATTERN = re.compile(r"[^\W_]+(?:['’-][^\W_]+)*")
SENTENCE_BOUNDARY = re.compile(r"(?<=[.!?])\s+(?=[A-Z])")
DEFAULT_COLUMN = "text"
INSERTED = -1


class TextColumn(NamedTuple):
    label: str
    words: Tuple[str, ...]
    separators: Tuple[str, ...]

    @property
    def text(self) -> str:
        parts = [self.separators[0]]
        for word, separator in zip(self.words, self.separators[1:]):
            parts.append(word)
            parts.append(separator)
        return "".join(parts)


def _segment(label: str, text: str) -> TextColumn:
    words: List[str] = []
    separators: List[str] = []
    cursor = 0
    for match in WORD_PATTERN.finditer(text):
        separators.append(text[cursor:match.start()])
        words.append(match.group())
        cursor = match.end()
    separators.append(text[cursor:])
    return TextColumn(label, tuple(words), tuple(separators))


def is_single_word(word: str) -> bool:
    return bool(word) and WORD_PATTERN.fullmatch(word) is not None


def apply_casing(original: str, replacement: str) -> str:
    """Carry the capitalization of `original` over to `replacement`."""
    if len(original) > 1 and original.isupper():
        return replacement.upper()
    if original[:1].isupper():
        return replacement[:1].upper() + replacement[1:]
    return replacement


class AttackedText:
    """Immutable text that keeps its tokenization across word edits.

    A text has one or more labelled columns (premise/hypothesis for
    entailment); word indices run over all columns in order. Every edit
    returns a new value and records which current words were modified and,
    for each current word, the index it had in the original text
    (-1 for inserted words).
    """

    def __init__(self, text_input: Union[str, Mapping[str, str]]):
        if isinstance(text_input, str):
            text_input = OrderedDict([(DEFAULT_COLUMN, text_input)])
        columns = tuple(_segment(label, text) for label, text in text_input.items())
        num_words = sum(len(c.words) for c in columns)
        self._init(columns, frozenset(), tuple(range(num_words)))

    @classmethod
    def _derive(
        cls,
        columns: Tuple[TextColumn, ...],
        modified_indices: FrozenSet[int],
        original_indices: Tuple[int, ...],
    ) -> "AttackedText":
        instance = cls.__new__(cls)
        instance._init(columns, modified_indices, original_indices)
        return instance

    def _init(self, columns, modified_indices, original_indices) -> None:
        self._columns = columns
        self._words = tuple(w for c in columns for w in c.words)
        self._modified_indices = modified_indices
        self._original_indices = original_indices
        self._text = "\n".join(c.text for c in columns)

    # Accessors

    @property
    def text(self) -> str:
        return self._text

    @property
    def words(self) -> Tuple[str, ...]:
        return self._words

    @property
    def num_words(self) -> int:
        return len(self._words)

    @property
    def columns(self) -> Tuple[TextColumn, ...]:
        return self._columns

    @property
    def column_labels(self) -> Tuple[str, ...]:
        return tuple(c.label for c in self._columns)

    @property
    def column_texts(self) -> "OrderedDict[str, str]":
        return OrderedDict((c.label, c.text) for c in self._columns)

    @property
    def separators(self) -> Tuple[str, ...]:
        return tuple(s for c in self._columns for s in c.separators)

    @property
    def modified_indices(self) -> FrozenSet[int]:
        return self._modified_indices

    @property
    def original_indices(self) -> Tuple[int, ...]:
        return self._original_indices

    @property
    def attrs(self) -> Dict[str, object]:
        return {
            "modified_indices": self._modified_indices,
            "original_index_map": self._original_indices,
        }

    def column_word_indices(self, label: str) -> range:
        start = 0
        for column in self._columns:
            if column.label == label:
                return range(start, start + len(column.words))
            start += len(column.words)
        return range(0)

    def _locate(self, index: int) -> Tuple[int, int]:
        if not 0 <= index < len(self._words):
            raise TextEditError(f"Word index {index} out of range for {len(self._words)} words")
        offset = index
        for position, column in enumerate(self._columns):
            if offset < len(column.words):
                return position, offset
            offset -= len(column.words)
        raise TextEditError(f"Word index {index} out of range")

    def _with_column(self, position: int, column: TextColumn) -> Tuple[TextColumn, ...]:
        return self._columns[:position] + (column,) + self._columns[position + 1:]

    # Edits

    def replace_word_at_index(self, index: int, word: str) -> "AttackedText":
        if not word:
            raise TextEditError("Replacement word must not be empty")
        position, local = self._locate(index)
        column = self._columns[position]
        word = apply_casing(column.words[local], word)
        if not is_single_word(word):
            raise TextEditError(f"Replacement {word!r} is not a single word")
        words = column.words[:local] + (word,) + column.words[local + 1:]
        return self._derive(
            self._with_column(position, column._replace(words=words)),
            self._modified_indices | {index},
            self._original_indices,
        )

    def replace_words_at_indices(self, indices: Sequence[int], words: Sequence[str]) -> "AttackedText":
        if len(indices) != len(words):
            raise TextEditError("Indices and replacement words differ in length")
        text = self
        for index, word in zip(indices, words):
            text = text.replace_word_at_index(index, word)
        return text

    def delete_word_at_index(self, index: int) -> "AttackedText":
        position, local = self._locate(index)
        column = self._columns[position]
        words = column.words[:local] + column.words[local + 1:]
        seps = column.separators
        if len(column.words) == 1:
            separators = (seps[0] + seps[1],)
        elif local == len(column.words) - 1:
            # last word: drop the left separator, keep trailing punctuation
            separators = seps[:local] + seps[local + 1:]
        else:
            separators = seps[:local + 1] + seps[local + 2:]
        modified = frozenset(i if i < index else i - 1 for i in self._modified_indices if i != index)
        original = self._original_indices[:index] + self._original_indices[index + 1:]
        return self._derive(
            self._with_column(position, TextColumn(column.label, words, separators)),
            modified,
            original,
        )

    def insert_word_after_index(self, index: int, word: str) -> "AttackedText":
        if not is_single_word(word):
            raise TextEditError(f"Inserted text {word!r} is not a single word")
        position, local = self._locate(index)
        column = self._columns[position]
        words = column.words[:local + 1] + (word,) + column.words[local + 1:]
        separators = column.separators[:local + 1] + (" ",) + column.separators[local + 1:]
        modified = frozenset(i if i <= index else i + 1 for i in self._modified_indices) | {index + 1}
        original = self._original_indices[:index + 1] + (INSERTED,) + self._original_indices[index + 1:]
        return self._derive(
            self._with_column(position, TextColumn(column.label, words, separators)),
            modified,
            original,
        )

    # Alignment with other texts of the same edit chain

    def current_index_of(self, original_index: int) -> Optional[int]:
        try:
            return self._original_indices.index(original_index)
        except ValueError:
            return None

    def aligned_indices(self, other: "AttackedText") -> List[Tuple[int, int]]:
        """Pairs (i, j) of word positions in self and other that descend from the same original word."""
        positions = {o: j for j, o in enumerate(other._original_indices) if o != INSERTED}
        return [
            (i, positions[o])
            for i, o in enumerate(self._original_indices)
            if o != INSERTED and o in positions
        ]

    def changed_word_pairs(self, other: "AttackedText") -> List[Tuple[int, int]]:
        return [(i, j) for i, j in self.aligned_indices(other) if self._words[i] != other._words[j]]

    def num_words_diff(self, other: "AttackedText") -> int:
        """Word positions that differ, counting inserted and deleted words."""
        aligned = self.aligned_indices(other)
        changed = sum(1 for i, j in aligned if self._words[i] != other._words[j])
        return changed + (self.num_words - len(aligned)) + (other.num_words - len(aligned))

    # Linguistic helpers

    def pos_tags(self, lexicon: "PosLexicon") -> List["PosTag"]:
        return [lexicon.tag(word) for word in self._words]

    def sentences(self) -> List[str]:
        return [s for c in self._columns for s in SENTENCE_BOUNDARY.split(c.text) if s.strip()]

    def words_window_around_index(self, index: int, window_size: float) -> List[str]:
        """Up to `window_size` consecutive words containing word `index`."""
        if math.isinf(window_size) or window_size >= self.num_words:
            return list(self._words)
        half = (window_size - 1) / 2
        start = index - math.floor(half)
        end = index + math.ceil(half)
        if start < 0:
            end, start = end - start, 0
        if end >= self.num_words:
            start, end = max(0, start - (end - self.num_words + 1)), self.num_words - 1
        return list(self._words[start:end + 1])

    def text_window_around_index(self, index: int, window_size: float) -> str:
        return " ".join(self.words_window_around_index(index, window_size))

    # Value semantics

    def _key(self) -> Tuple[str, ...]:
        return tuple(c.text for c in self._columns)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AttackedText) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"<AttackedText {self._text!r}>"


def segment_words(text: Union[str, Mapping[str, str]]) -> AttackedText:
    return AttackedText(text)

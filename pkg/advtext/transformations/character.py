import string
from typing import List, Optional

from advtext.resources.charmaps import CharMaps
from advtext.transformations.base import WordSwap

LETTERS = string.ascii_lowercase


def inner_positions(word: str) -> range:
    """Positions open to deletion/substitution: interior characters once a word has three or more."""
    return range(1, len(word) - 1) if len(word) >= 3 else range(len(word))


class CharacterSwap(WordSwap):
    """Character-level edit applied at every eligible position, or at one random position."""

    def __init__(self, random_one: bool = True):
        self.random_one = random_one

    def _positions(self, word: str) -> range:
        return inner_positions(word)

    def _edits_at(self, word: str, position: int, context) -> List[str]:
        raise NotImplementedError

    def _get_replacement_words(self, word, index, attacked_text, context) -> List[str]:
        positions = list(self._positions(word))
        if not positions:
            return []
        if self.random_one:
            position = positions[int(context.rng.integers(len(positions)))]
            return self._edits_at(word, position, context)
        return [w for p in positions for w in self._edits_at(word, p, context)]

    def extra_repr_keys(self) -> List[str]:
        return ["random_one"]


class WordSwapRandomCharacterDeletion(CharacterSwap):
    def _edits_at(self, word, position, context):
        return [word[:position] + word[position + 1:]]


class WordSwapNeighboringCharacterSwap(CharacterSwap):
    """Swaps characters `p` and `p + 1`; outer characters stay put on words of three or more."""

    def _positions(self, word: str) -> range:
        return range(1, len(word) - 2) if len(word) >= 3 else range(len(word) - 1)

    def _edits_at(self, word, position, context):
        return [word[:position] + word[position + 1] + word[position] + word[position + 2:]]


class WordSwapRandomCharacterSubstitution(CharacterSwap):
    def _edits_at(self, word, position, context):
        if self.random_one:
            letters = [LETTERS[int(context.rng.integers(len(LETTERS)))]]
        else:
            letters = LETTERS
        return [word[:position] + c + word[position + 1:] for c in letters if c != word[position]]


class WordSwapRandomCharacterInsertion(CharacterSwap):
    def _positions(self, word: str) -> range:
        return range(1, len(word)) if len(word) >= 3 else range(len(word) + 1)

    def _edits_at(self, word, position, context):
        if self.random_one:
            letters = [LETTERS[int(context.rng.integers(len(LETTERS)))]]
        else:
            letters = LETTERS
        return [word[:position] + c + word[position:] for c in letters]


class WordSwapHomoglyphSwap(CharacterSwap):
    """Every mapped inner character replaced by its look-alike, one position at a time."""

    def __init__(self, charmaps: Optional[CharMaps] = None):
        super().__init__(random_one=False)
        self.charmaps = charmaps or CharMaps()

    @classmethod
    def from_params(cls, params, context):
        return cls(context.resources.charmaps, **params)

    def _edits_at(self, word, position, context):
        substitute = self.charmaps.homoglyph(word[position])
        return [] if substitute is None else [word[:position] + substitute + word[position + 1:]]

    def extra_repr_keys(self) -> List[str]:
        return []


class WordSwapQWERTY(CharacterSwap):
    """Typos from adjacent keys of a QWERTY keyboard."""

    def __init__(self, charmaps: Optional[CharMaps] = None):
        super().__init__(random_one=False)
        self.charmaps = charmaps or CharMaps()

    @classmethod
    def from_params(cls, params, context):
        return cls(context.resources.charmaps, **params)

    def _edits_at(self, word, position, context):
        char = word[position]
        neighbors = self.charmaps.neighbors(char)
        if char.isupper():
            neighbors = [n.upper() for n in neighbors]
        return [word[:position] + n + word[position + 1:] for n in neighbors]

    def extra_repr_keys(self) -> List[str]:
        return []

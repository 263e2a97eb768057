import json
import logging
import string
from typing import Dict, Optional, Tuple

from pydantic import ValidationError

from advtext.core.errors import ResourceFormatError
from advtext.schemas.resources import CharMapsFile

logger = logging.getLogger(__name__)

DEFAULT_HOMOGLYPHS: Dict[str, str] = {
    "a": "ɑ", "b": "Ь", "c": "ϲ", "d": "ԁ", "e": "е", "f": "𝚏", "g": "ɡ", "h": "հ",
    "i": "і", "j": "ϳ", "k": "𝒌", "l": "ӏ", "m": "ｍ", "n": "ո", "o": "о", "p": "р",
    "q": "ԛ", "r": "ⲅ", "s": "ѕ", "t": "𝚝", "u": "ս", "v": "ѵ", "w": "ԝ", "x": "х",
    "y": "у", "z": "ᴢ",
    "0": "O", "1": "l", "2": "ᒿ", "3": "Ʒ", "4": "Ꮞ", "5": "Ƽ", "6": "б", "7": "𝟕",
    "8": "Ȣ", "9": "৭",
}

# Row strings with horizontal offsets of a staggered US keyboard.
KEYBOARD_ROWS: Tuple[Tuple[str, float], ...] = (
    ("1234567890", 0.0),
    ("qwertyuiop", 0.5),
    ("asdfghjkl", 0.75),
    ("zxcvbnm", 1.25),
)


def qwerty_neighbors() -> Dict[str, Tuple[str, ...]]:
    positions = {
        key: (row, offset + col)
        for row, (keys, offset) in enumerate(KEYBOARD_ROWS)
        for col, key in enumerate(keys)
    }
    neighbors: Dict[str, Tuple[str, ...]] = {}
    for key, (row, x) in positions.items():
        near = [
            other
            for other, (other_row, other_x) in positions.items()
            if other != key
            and (
                (other_row == row and abs(other_x - x) == 1.0)
                or (abs(other_row - row) == 1 and abs(other_x - x) < 1.0)
            )
        ]
        neighbors[key] = tuple(sorted(near))
    return neighbors


class CharMaps:
    """Homoglyph and keyboard-adjacency tables for character-level perturbation."""

    def __init__(
        self,
        homoglyphs: Optional[Dict[str, str]] = None,
        keyboard_neighbors: Optional[Dict[str, Tuple[str, ...]]] = None,
    ):
        self.homoglyphs = dict(DEFAULT_HOMOGLYPHS if homoglyphs is None else homoglyphs)
        self.keyboard_neighbors = {
            k: tuple(v) for k, v in (qwerty_neighbors() if keyboard_neighbors is None else keyboard_neighbors).items()
        }

    def homoglyph(self, char: str) -> Optional[str]:
        return self.homoglyphs.get(char)

    def neighbors(self, char: str) -> Tuple[str, ...]:
        return self.keyboard_neighbors.get(char.lower(), ())

    @classmethod
    def load(cls, path: str) -> "CharMaps":
        """Built-in tables overridden key by key with the contents of a JSON file."""
        try:
            with open(path, encoding="utf-8") as f:
                parsed = CharMapsFile.parse_obj(json.load(f))
        except json.JSONDecodeError as exc:
            raise ResourceFormatError(path, exc.lineno, exc.msg)
        except ValidationError as exc:
            raise ResourceFormatError(path, 1, str(exc))
        maps = cls()
        maps.homoglyphs.update(parsed.homoglyphs)
        maps.keyboard_neighbors.update({k: tuple(v) for k, v in parsed.keyboard_neighbors.items()})
        logger.info("Loaded char maps from %s", path)
        return maps

    def is_total(self, alphabet: str = string.ascii_lowercase + string.digits) -> bool:
        return all(c in self.homoglyphs and self.keyboard_neighbors.get(c) for c in alphabet)

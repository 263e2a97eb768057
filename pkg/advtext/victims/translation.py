import logging
from collections import OrderedDict
from typing import Dict, List, Sequence

from advtext.core.errors import ResourceFormatError
from advtext.models.attacked_text import WORD_PATTERN, apply_casing
from advtext.victims.base import TextToTextModel

logger = logging.getLogger(__name__)


class DictionaryTranslator(TextToTextModel):
    """Word-by-word dictionary substitution; unknown words are copied."""

    def __init__(self, dictionary: Dict[str, str], model_id: str = "dictionary-translator"):
        self.dictionary = OrderedDict((src.lower(), tgt) for src, tgt in dictionary.items())
        self.model_id = model_id

    def _substitute(self, match) -> str:
        word = match.group()
        target = self.dictionary.get(word.lower())
        return word if target is None else apply_casing(word, target)

    def translate(self, texts: Sequence[str]) -> List[str]:
        return [WORD_PATTERN.sub(self._substitute, text) for text in texts]

    @classmethod
    def load(cls, path: str) -> "DictionaryTranslator":
        dictionary: Dict[str, str] = OrderedDict()
        with open(path, encoding="utf-8") as f:
            for line_number, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                fields = line.rstrip("\n").split("\t")
                if len(fields) != 2 or not fields[0] or not fields[1]:
                    raise ResourceFormatError(path, line_number, "expected source<TAB>target")
                dictionary[fields[0]] = fields[1]
        logger.info("Loaded translation dictionary with %d entries from %s", len(dictionary), path)
        return cls(dictionary)

    def dump(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as f:
            for src, tgt in self.dictionary.items():
                f.write(f"{src}\t{tgt}\n")

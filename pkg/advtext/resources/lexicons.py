import enum
import logging
from collections import OrderedDict
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from advtext.core.errors import ResourceFormatError
from advtext.models.attacked_text import is_single_word
from advtext.models.pos import PosTag

logger = logging.getLogger(__name__)


def _read_fields(path: str) -> Iterable[Tuple[int, List[str]]]:
    with open(path, encoding="utf-8") as f:
        for line_number, line in enumerate(f, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip() or line.startswith("#"):
                continue
            yield line_number, line.split("\t")


def _split_tagged(path: str, line_number: int, field: str) -> Tuple[str, Optional[PosTag]]:
    word, _, tag = field.strip().partition(":")
    if not word:
        raise ResourceFormatError(path, line_number, f"empty word in field {field!r}")
    if not tag:
        return word, None
    try:
        return word, PosTag(tag.upper())
    except ValueError:
        raise ResourceFormatError(path, line_number, f"unknown part-of-speech tag {tag!r}")


class PosLexicon:
    """Word -> ordered part-of-speech tags; the first listed tag wins."""

    def __init__(self, entries: Dict[str, Sequence[PosTag]]):
        self.entries: Dict[str, Tuple[PosTag, ...]] = OrderedDict(
            (word.lower(), tuple(tags)) for word, tags in entries.items() if tags
        )

    def tag(self, word: str) -> PosTag:
        tags = self.entries.get(word.lower())
        return tags[0] if tags else PosTag.OTHER

    def tags(self, word: str) -> Tuple[PosTag, ...]:
        return self.entries.get(word.lower(), ())

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def load(cls, path: str) -> "PosLexicon":
        entries: Dict[str, List[PosTag]] = OrderedDict()
        for line_number, fields in _read_fields(path):
            if len(fields) != 2:
                raise ResourceFormatError(path, line_number, "expected word<TAB>TAG[|TAG...]")
            try:
                tags = [PosTag(t.strip().upper()) for t in fields[1].split("|") if t.strip()]
            except ValueError as exc:
                raise ResourceFormatError(path, line_number, str(exc))
            entries.setdefault(fields[0].strip().lower(), []).extend(tags)
        logger.info("Loaded POS lexicon with %d words from %s", len(entries), path)
        return cls(entries)

    def dump(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as f:
            for word, tags in self.entries.items():
                f.write(f"{word}\t{'|'.join(t.value for t in tags)}\n")


class LexiconKind(str, enum.Enum):
    THESAURUS = "thesaurus"
    SEMEME = "sememe"


class SynonymLexicon:
    """Headword -> synonyms in file order, each optionally tagged with a POS."""

    def __init__(self, entries: Dict[str, Sequence[Tuple[str, Optional[PosTag]]]], kind: LexiconKind = LexiconKind.THESAURUS):
        self.kind = LexiconKind(kind)
        self.entries: Dict[str, List[Tuple[str, Optional[PosTag]]]] = OrderedDict()
        for head, synonyms in entries.items():
            head = head.lower()
            bucket = self.entries.setdefault(head, [])
            for synonym, tag in synonyms:
                if synonym.lower() == head or not is_single_word(synonym):
                    continue
                if (synonym, tag) not in bucket:
                    bucket.append((synonym, tag))

    def synonyms(self, word: str, pos: Optional[PosTag] = None) -> List[str]:
        result: List[str] = []
        for synonym, tag in self.entries.get(word.lower(), []):
            if pos is not None and tag is not None and tag != pos:
                continue
            if synonym not in result:
                result.append(synonym)
        return result

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def load(cls, path: str, kind: LexiconKind = LexiconKind.THESAURUS) -> "SynonymLexicon":
        entries: Dict[str, List[Tuple[str, Optional[PosTag]]]] = OrderedDict()
        skipped = 0
        for line_number, fields in _read_fields(path):
            head = fields[0].strip()
            if not head:
                raise ResourceFormatError(path, line_number, "missing headword")
            bucket = entries.setdefault(head, [])
            for field in fields[1:]:
                if not field.strip():
                    continue
                synonym, tag = _split_tagged(path, line_number, field)
                if not is_single_word(synonym):
                    skipped += 1
                    continue
                bucket.append((synonym, tag))
        if skipped:
            logger.debug("Skipped %d multi-word synonyms in %s", skipped, path)
        logger.info("Loaded %s lexicon with %d headwords from %s", LexiconKind(kind).value, len(entries), path)
        return cls(entries, kind=kind)

    def dump(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as f:
            for head, synonyms in self.entries.items():
                fields = [s if t is None else f"{s}:{t.value}" for s, t in synonyms]
                f.write("\t".join([head] + fields) + "\n")


class StopwordSet:
    def __init__(self, words: Iterable[str]):
        self.words: Set[str] = {w.strip().lower() for w in words if w.strip()}

    def __contains__(self, word: str) -> bool:
        return word.lower() in self.words

    def __len__(self) -> int:
        return len(self.words)

    @classmethod
    def load(cls, path: str) -> "StopwordSet":
        with open(path, encoding="utf-8") as f:
            return cls(line for line in f if not line.startswith("#"))

    def dump(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as f:
            for word in sorted(self.words):
                f.write(word + "\n")


class InflectionTable:
    """Lemma -> surface forms, each with the POS it realizes.

    File lines are `lemma[:TAG]<TAB>form:TAG<TAB>...`; the lemma is itself
    one of the forms.
    """

    def __init__(self, entries: Dict[str, Sequence[Tuple[str, Optional[PosTag]]]]):
        self.entries: Dict[str, List[Tuple[str, Optional[PosTag]]]] = OrderedDict()
        self._lemmas_of: Dict[str, List[str]] = {}
        for lemma, forms in entries.items():
            lemma = lemma.lower()
            bucket = self.entries.setdefault(lemma, [])
            for form, tag in forms:
                form = form.lower()
                if (form, tag) not in bucket:
                    bucket.append((form, tag))
                lemmas = self._lemmas_of.setdefault(form, [])
                if lemma not in lemmas:
                    lemmas.append(lemma)

    def inflections(self, word: str) -> List[str]:
        """Other forms sharing a lemma and a part of speech with `word`."""
        word = word.lower()
        result: List[str] = []
        for lemma in self._lemmas_of.get(word, []):
            forms = self.entries[lemma]
            own_tags = {tag for form, tag in forms if form == word}
            for form, tag in forms:
                if form == word or form in result:
                    continue
                if tag is None or None in own_tags or tag in own_tags:
                    result.append(form)
        return result

    @classmethod
    def load(cls, path: str) -> "InflectionTable":
        entries: Dict[str, List[Tuple[str, Optional[PosTag]]]] = OrderedDict()
        for line_number, fields in _read_fields(path):
            lemma, lemma_tag = _split_tagged(path, line_number, fields[0])
            forms = [(lemma, lemma_tag)]
            forms.extend(_split_tagged(path, line_number, f) for f in fields[1:] if f.strip())
            entries.setdefault(lemma, []).extend(forms)
        logger.info("Loaded inflections for %d lemmas from %s", len(entries), path)
        return cls(entries)

    def dump(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as f:
            for lemma, forms in self.entries.items():
                fields = [w if t is None else f"{w}:{t.value}" for w, t in forms]
                f.write("\t".join(fields) + "\n")

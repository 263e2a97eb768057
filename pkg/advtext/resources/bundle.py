import logging
import os
from dataclasses import dataclass, field
from typing import Any, Optional

from advtext.core.config import settings
from advtext.core.errors import ResourceMissingError
from advtext.resources.charmaps import CharMaps
from advtext.resources.embeddings import EmbeddingStore
from advtext.resources.lexicons import InflectionTable, LexiconKind, PosLexicon, StopwordSet, SynonymLexicon

logger = logging.getLogger(__name__)

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def default_stopwords() -> StopwordSet:
    return StopwordSet.load(os.path.join(DATA_DIR, "stopwords.txt"))


@dataclass
class ResourceBundle:
    """Lexical resources shared read-only by every component of a run."""

    embeddings: Optional[EmbeddingStore] = None
    pos_lexicon: Optional[PosLexicon] = None
    thesaurus: Optional[SynonymLexicon] = None
    sememes: Optional[SynonymLexicon] = None
    inflections: Optional[InflectionTable] = None
    stopwords: StopwordSet = field(default_factory=default_stopwords)
    charmaps: CharMaps = field(default_factory=CharMaps)

    def require(self, name: str, context: str) -> Any:
        value = getattr(self, name)
        if value is None:
            raise ResourceMissingError(f"{context} needs the {name} resource, which is not loaded")
        return value


def load_resources(
    resource_dir: Optional[str] = None,
    embedding_path: Optional[str] = None,
    lexicon_path: Optional[str] = None,
) -> ResourceBundle:
    """Load whichever resource files exist under `resource_dir`."""
    resource_dir = resource_dir or settings.RESOURCE_DIR

    def path_of(name: str) -> Optional[str]:
        path = os.path.join(resource_dir, name)
        return path if os.path.exists(path) else None

    bundle = ResourceBundle()
    embedding_path = embedding_path or path_of(settings.EMBEDDING_FILE)
    if embedding_path:
        bundle.embeddings = EmbeddingStore.load(embedding_path)
    if path_of(settings.POS_LEXICON_FILE):
        bundle.pos_lexicon = PosLexicon.load(path_of(settings.POS_LEXICON_FILE))
    lexicon_path = lexicon_path or path_of(settings.THESAURUS_FILE)
    if lexicon_path:
        bundle.thesaurus = SynonymLexicon.load(lexicon_path, LexiconKind.THESAURUS)
    if path_of(settings.SEMEME_FILE):
        bundle.sememes = SynonymLexicon.load(path_of(settings.SEMEME_FILE), LexiconKind.SEMEME)
    if path_of(settings.INFLECTIONS_FILE):
        bundle.inflections = InflectionTable.load(path_of(settings.INFLECTIONS_FILE))
    if path_of(settings.STOPWORDS_FILE):
        bundle.stopwords = StopwordSet.load(path_of(settings.STOPWORDS_FILE))
    if path_of(settings.CHARMAPS_FILE):
        bundle.charmaps = CharMaps.load(path_of(settings.CHARMAPS_FILE))
    return bundle

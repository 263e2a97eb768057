from advtext.resources.bundle import ResourceBundle, load_resources
from advtext.resources.charmaps import CharMaps
from advtext.resources.embeddings import EmbeddingStore, cosine_similarity
from advtext.resources.lexicons import InflectionTable, LexiconKind, PosLexicon, StopwordSet, SynonymLexicon

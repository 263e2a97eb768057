from typing import List, Optional

from advtext.core.config import settings
from advtext.core.errors import CapabilityError
from advtext.models.pos import PosTag
from advtext.resources.embeddings import EmbeddingStore
from advtext.resources.lexicons import InflectionTable, PosLexicon, SynonymLexicon
from advtext.transformations.base import WordSwap


class WordSwapEmbedding(WordSwap):
    """Nearest neighbours in a (counter-fitted) embedding space."""

    def __init__(self, embeddings: EmbeddingStore, max_candidates: int = 15, embedding_type: str = settings.EMBEDDING_TYPE):
        self.embeddings = embeddings
        self.max_candidates = max_candidates
        self.embedding_type = embedding_type

    @classmethod
    def from_params(cls, params, context):
        return cls(context.resources.require("embeddings", cls.__name__), **params)

    def _get_replacement_words(self, word, index, attacked_text, context) -> List[str]:
        return [w for w, _ in self.embeddings.nearest_neighbors(word.lower(), self.max_candidates)]

    def extra_repr_keys(self) -> List[str]:
        return ["max_candidates", "embedding_type"]


class WordSwapLexicon(WordSwap):
    """Synonyms from a lexicon, optionally restricted to the word's part of speech.

    With `require_pos_and_sememe` only synonyms tagged with the word's
    lexicon tag (or untagged) are proposed; a sememe lexicon already
    groups words by shared sememes.
    """

    resource = "thesaurus"

    def __init__(
        self,
        lexicon: SynonymLexicon,
        pos_lexicon: Optional[PosLexicon] = None,
        require_pos_and_sememe: bool = False,
        max_candidates: int = -1,
    ):
        self.lexicon = lexicon
        self.pos_lexicon = pos_lexicon
        self.require_pos_and_sememe = require_pos_and_sememe
        self.max_candidates = max_candidates

    def _pos_filter(self, word: str) -> Optional[PosTag]:
        if not self.require_pos_and_sememe or self.pos_lexicon is None:
            return None
        tag = self.pos_lexicon.tag(word)
        return None if tag == PosTag.OTHER else tag

    def _get_replacement_words(self, word, index, attacked_text, context) -> List[str]:
        synonyms = self.lexicon.synonyms(word, pos=self._pos_filter(word))
        return synonyms if self.max_candidates < 0 else synonyms[: self.max_candidates]


class WordSwapWordNet(WordSwapLexicon):
    def __init__(self, lexicon: SynonymLexicon):
        super().__init__(lexicon)

    @classmethod
    def from_params(cls, params, context):
        return cls(context.resources.require("thesaurus", cls.__name__), **params)


class WordSwapHowNet(WordSwapLexicon):
    def __init__(self, lexicon: SynonymLexicon, pos_lexicon: Optional[PosLexicon] = None, max_candidates: int = -1):
        super().__init__(lexicon, pos_lexicon, require_pos_and_sememe=True, max_candidates=max_candidates)

    @classmethod
    def from_params(cls, params, context):
        return cls(
            context.resources.require("sememes", cls.__name__),
            context.resources.pos_lexicon,
            **params,
        )

    def extra_repr_keys(self) -> List[str]:
        return ["max_candidates"]


class WordSwapInflections(WordSwap):
    def __init__(self, inflections: InflectionTable):
        self.inflections = inflections

    @classmethod
    def from_params(cls, params, context):
        return cls(context.resources.require("inflections", cls.__name__), **params)

    def _get_replacement_words(self, word, index, attacked_text, context) -> List[str]:
        return self.inflections.inflections(word)


class WordSwapGradientBased(WordSwap):
    """Vocabulary swaps ranked by the victim's first-order loss increase."""

    is_black_box = False

    def __init__(self, model, top_n: int = 1):
        if not getattr(model, "is_white_box", False) or not hasattr(model, "word_swap_loss_gradient"):
            raise CapabilityError(f"{type(self).__name__} needs a white-box victim with swap gradients")
        self.model = model
        self.top_n = top_n

    @classmethod
    def from_params(cls, params, context):
        return cls(context.model, **params)

    def _get_replacement_words(self, word, index, attacked_text, context) -> List[str]:
        if context.ground_truth_output is None:
            return []
        ranking = self.model.word_swap_loss_gradient(attacked_text, int(context.ground_truth_output), index, top_n=self.top_n)
        return [w for w, _ in ranking]

    def extra_repr_keys(self) -> List[str]:
        return ["top_n"]

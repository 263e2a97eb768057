
from advtext.core.errors import TextEditError
from advtext.resources.lexicons import SynonymLexicon
from advtext.transformations.base import Transformation


class WordDeletion(Transformation):
    """Removes one word; a single remaining word is never deleted."""

    preserves_word_count = False

    def _get_transformations(self, attacked_text, indices_to_modify, context):
        if attacked_text.num_words <= 1:
            return []
        return [attacked_text.delete_word_at_index(i) for i in indices_to_modify]


class WordInsertionRandomSynonym(Transformation):
    """Inserts a random synonym of word i after a random other word."""

    preserves_word_count = False

    def __init__(self, lexicon: SynonymLexicon):
        self.lexicon = lexicon

    @classmethod
    def from_params(cls, params, context):
        return cls(context.resources.require("thesaurus", cls.__name__), **params)

    def _get_transformations(self, attacked_text, indices_to_modify, context):
        candidates = []
        for i in indices_to_modify:
            synonyms = self.lexicon.synonyms(attacked_text.words[i])
            if not synonyms:
                continue
            synonym = synonyms[int(context.rng.integers(len(synonyms)))]
            others = [j for j in indices_to_modify if j != i] or [i]
            position = others[int(context.rng.integers(len(others)))]
            try:
                candidates.append(attacked_text.insert_word_after_index(position, synonym))
            except TextEditError:
                continue
        return candidates


class WordInnerSwapRandom(Transformation):
    """Exchanges word i with a randomly chosen other modifiable word."""

    def _get_transformations(self, attacked_text, indices_to_modify, context):
        candidates = []
        words = attacked_text.words
        for i in indices_to_modify:
            others = [j for j in indices_to_modify if j != i]
            if not others:
                continue
            j = others[int(context.rng.integers(len(others)))]
            candidates.append(attacked_text.replace_words_at_indices([i, j], [words[j].lower(), words[i].lower()]))
        return candidates

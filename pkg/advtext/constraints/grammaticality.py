from typing import List, Optional

from advtext.constraints.base import Constraint
from advtext.models.attacked_text import AttackedText
from advtext.models.pos import PosTag
from advtext.resources.lexicons import PosLexicon

_VERB_NOUN = {PosTag.NOUN, PosTag.VERB}


class PartOfSpeech(Constraint):
    """A swapped word must keep the part of speech of the word it replaces."""

    def __init__(
        self,
        pos_lexicon: Optional[PosLexicon] = None,
        tagger_type: str = "lexicon",
        tagset: str = "universal",
        allow_verb_noun_swap: bool = True,
        compare_against_original: bool = True,
    ):
        super().__init__(compare_against_original)
        self.pos_lexicon = pos_lexicon or PosLexicon({})
        self.tagger_type = tagger_type
        self.tagset = tagset
        self.allow_verb_noun_swap = allow_verb_noun_swap

    @classmethod
    def from_params(cls, params, context):
        return cls(context.resources.require("pos_lexicon", cls.__name__), **params)

    def tags_compatible(self, reference_tag: PosTag, candidate_tag: PosTag) -> bool:
        if reference_tag == candidate_tag:
            return True
        return self.allow_verb_noun_swap and {reference_tag, candidate_tag} == _VERB_NOUN

    def _check_constraint(self, reference: AttackedText, candidate: AttackedText) -> bool:
        for i, j in reference.changed_word_pairs(candidate):
            if not self.tags_compatible(self.pos_lexicon.tag(reference.words[i]), self.pos_lexicon.tag(candidate.words[j])):
                return False
        return True

    def extra_repr_keys(self) -> List[str]:
        return ["tagger_type", "tagset", "allow_verb_noun_swap"] + super().extra_repr_keys()

import enum


class PosTag(str, enum.Enum):
    NOUN = "NOUN"
    VERB = "VERB"
    ADJ = "ADJ"
    ADV = "ADV"
    PRON = "PRON"
    DET = "DET"
    ADP = "ADP"
    NUM = "NUM"
    CONJ = "CONJ"
    PRT = "PRT"
    PUNCT = "PUNCT"
    OTHER = "OTHER"

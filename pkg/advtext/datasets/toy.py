"""A small synthetic sentiment world generated deterministically.

Every word belongs to a synonym cluster. Sentences draw the first three
members of a cluster with skewed frequencies and never use the fourth,
so a classifier trained on the corpus knows some synonyms far better
than others. Negative adjective and verb clusters point away from their
positive counterparts in embedding space.
"""
import logging
import os
from collections import OrderedDict
from functools import lru_cache
from typing import Dict, List, Tuple

import numpy as np

from advtext.core.config import settings
from advtext.datasets.dataset import Dataset, Example, TaskType
from advtext.models.pos import PosTag
from advtext.resources.bundle import ResourceBundle, default_stopwords
from advtext.resources.charmaps import CharMaps
from advtext.resources.embeddings import EmbeddingStore
from advtext.resources.lexicons import InflectionTable, LexiconKind, PosLexicon, SynonymLexicon
from advtext.schemas.training import TrainConfig
from advtext.victims.linear import LinearTextClassifier, train_classifier
from advtext.victims.translation import DictionaryTranslator

logger = logging.getLogger(__name__)

LABEL_NAMES = ["negative", "positive"]
EMBEDDING_DIM = 32
TOY_SEED = 1234

# name -> (part of speech, sentiment sign, members); the last member never appears in the corpus
CLUSTERS: "OrderedDict[str, Tuple[PosTag, int, List[str]]]" = OrderedDict([
    ("pos_adj_1", (PosTag.ADJ, 1, ["good", "fine", "nice", "decent"])),
    ("pos_adj_2", (PosTag.ADJ, 1, ["great", "excellent", "superb", "terrific"])),
    ("pos_adj_3", (PosTag.ADJ, 1, ["wonderful", "marvelous", "brilliant", "splendid"])),
    ("neg_adj_1", (PosTag.ADJ, -1, ["bad", "poor", "lousy", "inferior"])),
    ("neg_adj_2", (PosTag.ADJ, -1, ["awful", "terrible", "horrible", "dreadful"])),
    ("neg_adj_3", (PosTag.ADJ, -1, ["boring", "dull", "tedious", "tiresome"])),
    ("pos_verb", (PosTag.VERB, 1, ["loved", "enjoyed", "liked", "adored"])),
    ("neg_verb", (PosTag.VERB, -1, ["hated", "disliked", "loathed", "despised"])),
    ("noun_1", (PosTag.NOUN, 0, ["movie", "film", "picture", "flick"])),
    ("noun_2", (PosTag.NOUN, 0, ["story", "plot", "narrative", "tale"])),
    ("noun_3", (PosTag.NOUN, 0, ["acting", "performance", "portrayal", "cast"])),
    ("adv_1", (PosTag.ADV, 0, ["really", "truly", "quite", "rather"])),
    ("adv_2", (PosTag.ADV, 0, ["completely", "totally", "utterly", "entirely"])),
])

FILLERS: Dict[str, PosTag] = OrderedDict([
    ("the", PosTag.DET), ("this", PosTag.DET), ("was", PosTag.VERB), ("is", PosTag.VERB),
    ("i", PosTag.PRON), ("it", PosTag.PRON), ("and", PosTag.CONJ), ("but", PosTag.CONJ),
])

MEMBER_WEIGHTS = np.array([0.6, 0.3, 0.1])

TEMPLATES = [
    "the {noun} was {adv} {adj}.",
    "this {noun} is {adj}.",
    "i {verb} the {noun}.",
    "the {noun} was {adj} and the {noun2} was {adj2}.",
    "{adv} {adj} {noun}.",
    "i {adv} {verb} this {noun}, it was {adj}.",
]
# clause with the opposite sentiment first; the label follows the second clause
CONTRAST_TEMPLATE = "the {noun} was {adj_other}, but the {noun2} was {adj}."
CONTRAST_RATE = 0.15

LEMMAS: "OrderedDict[str, Tuple[PosTag, List[str]]]" = OrderedDict([
    ("love", (PosTag.VERB, ["loves", "loved", "loving"])),
    ("enjoy", (PosTag.VERB, ["enjoys", "enjoyed", "enjoying"])),
    ("like", (PosTag.VERB, ["likes", "liked", "liking"])),
    ("adore", (PosTag.VERB, ["adores", "adored", "adoring"])),
    ("hate", (PosTag.VERB, ["hates", "hated", "hating"])),
    ("dislike", (PosTag.VERB, ["dislikes", "disliked", "disliking"])),
    ("loathe", (PosTag.VERB, ["loathes", "loathed", "loathing"])),
    ("despise", (PosTag.VERB, ["despises", "despised", "despising"])),
    ("movie", (PosTag.NOUN, ["movies"])),
    ("film", (PosTag.NOUN, ["films"])),
    ("picture", (PosTag.NOUN, ["pictures"])),
    ("flick", (PosTag.NOUN, ["flicks"])),
    ("story", (PosTag.NOUN, ["stories"])),
    ("plot", (PosTag.NOUN, ["plots"])),
    ("narrative", (PosTag.NOUN, ["narratives"])),
    ("tale", (PosTag.NOUN, ["tales"])),
    ("be", (PosTag.VERB, ["is", "was", "are", "were"])),
])

FRENCH = OrderedDict([
    ("good", "bon"), ("fine", "bien"), ("nice", "agréable"), ("decent", "correct"),
    ("great", "génial"), ("excellent", "excellent"), ("superb", "superbe"), ("terrific", "formidable"),
    ("wonderful", "merveilleux"), ("marvelous", "magnifique"), ("brilliant", "brillant"), ("splendid", "splendide"),
    ("bad", "mauvais"), ("poor", "médiocre"), ("lousy", "minable"), ("inferior", "inférieur"),
    ("awful", "affreux"), ("terrible", "terrible"), ("horrible", "horrible"), ("dreadful", "épouvantable"),
    ("boring", "ennuyeux"), ("dull", "terne"), ("tedious", "fastidieux"), ("tiresome", "lassant"),
    ("love", "aime"), ("loves", "aime"), ("loved", "aimé"), ("loving", "aimant"),
    ("enjoy", "apprécie"), ("enjoys", "apprécie"), ("enjoyed", "apprécié"), ("enjoying", "appréciant"),
    ("like", "plaît"), ("likes", "plaît"), ("liked", "plu"), ("liking", "plaisant"),
    ("adore", "adore"), ("adores", "adore"), ("adored", "adoré"), ("adoring", "adorant"),
    ("hate", "déteste"), ("hates", "déteste"), ("hated", "détesté"), ("hating", "détestant"),
    ("dislike", "méprise"), ("dislikes", "méprise"), ("disliked", "méprisé"), ("disliking", "méprisant"),
    ("loathe", "abhorre"), ("loathes", "abhorre"), ("loathed", "abhorré"), ("loathing", "abhorrant"),
    ("despise", "dédaigne"), ("despises", "dédaigne"), ("despised", "dédaigné"), ("despising", "dédaignant"),
    ("movie", "film"), ("movies", "films"), ("film", "film"), ("films", "films"),
    ("picture", "image"), ("pictures", "images"), ("flick", "navet"), ("flicks", "navets"),
    ("story", "histoire"), ("stories", "histoires"), ("plot", "intrigue"), ("plots", "intrigues"),
    ("narrative", "récit"), ("narratives", "récits"), ("tale", "conte"), ("tales", "contes"),
    ("acting", "jeu"), ("performance", "interprétation"), ("portrayal", "portrait"), ("cast", "distribution"),
    ("really", "vraiment"), ("truly", "sincèrement"), ("quite", "assez"), ("rather", "plutôt"),
    ("completely", "complètement"), ("totally", "totalement"), ("utterly", "absolument"), ("entirely", "entièrement"),
    ("the", "le"), ("this", "ce"), ("was", "était"), ("is", "est"), ("are", "sont"), ("were", "étaient"),
    ("i", "je"), ("it", "il"), ("and", "et"), ("but", "mais"),
])


def _words_of(pos: PosTag, sign: int) -> List[str]:
    return [name for name, (tag, s, _) in CLUSTERS.items() if tag == pos and s == sign]


def _pick(rng: np.random.Generator, cluster: str) -> str:
    members = CLUSTERS[cluster][2]
    return members[int(rng.choice(len(MEMBER_WEIGHTS), p=MEMBER_WEIGHTS))]


def _sentence(rng: np.random.Generator, label: int) -> str:
    sign = 1 if label == 1 else -1

    def adj(s: int) -> str:
        clusters = _words_of(PosTag.ADJ, s)
        return _pick(rng, clusters[int(rng.integers(len(clusters)))])

    def noun() -> str:
        clusters = _words_of(PosTag.NOUN, 0)
        return _pick(rng, clusters[int(rng.integers(len(clusters)))])

    def adv() -> str:
        clusters = _words_of(PosTag.ADV, 0)
        return _pick(rng, clusters[int(rng.integers(len(clusters)))])

    slots = {
        "noun": noun(), "noun2": noun(), "adv": adv(), "adj": adj(sign), "adj2": adj(sign),
        "adj_other": adj(-sign), "verb": _pick(rng, _words_of(PosTag.VERB, sign)[0]),
    }
    if rng.uniform() < CONTRAST_RATE:
        template = CONTRAST_TEMPLATE
    else:
        template = TEMPLATES[int(rng.integers(len(TEMPLATES)))]
    sentence = template.format(**slots)
    return sentence[0].upper() + sentence[1:]


def toy_sentences(num_examples: int = 1000, seed: int = TOY_SEED) -> List[Tuple[str, int]]:
    """Balanced (sentence, label) pairs."""
    rng = np.random.default_rng(seed)
    pairs = []
    for k in range(num_examples):
        label = k % 2
        pairs.append((_sentence(rng, label), label))
    order = rng.permutation(num_examples)
    return [pairs[i] for i in order]


def toy_dataset(num_examples: int = 1000, seed: int = TOY_SEED) -> Dataset:
    examples = [Example(text, label) for text, label in toy_sentences(num_examples, seed)]
    return Dataset(examples, TaskType.CLASSIFICATION, label_names=LABEL_NAMES, name="toy")


def toy_translator() -> DictionaryTranslator:
    return DictionaryTranslator(FRENCH, model_id="toy-translator")


def toy_translation_dataset(num_examples: int = 200, seed: int = TOY_SEED) -> Dataset:
    translator = toy_translator()
    sources = [text for text, _ in toy_sentences(num_examples, seed)]
    examples = [Example(s, r) for s, r in zip(sources, translator.translate(sources))]
    return Dataset(examples, TaskType.TEXT_TO_TEXT, input_columns=("source",), name="toy-translation")


def toy_embeddings(seed: int = TOY_SEED) -> EmbeddingStore:
    rng = np.random.default_rng(seed)
    basis, _ = np.linalg.qr(rng.normal(size=(EMBEDDING_DIM, EMBEDDING_DIM)))
    axes = iter(basis.T)
    centers: Dict[str, np.ndarray] = {}
    for name, (_, sign, _) in CLUSTERS.items():
        # negative clusters mirror the positive cluster with the same rank
        if sign < 0:
            mirror = name.replace("neg_", "pos_")
            centers[name] = -centers[mirror]
        else:
            centers[name] = next(axes)
    words: List[str] = []
    vectors: List[np.ndarray] = []
    noise = 0.3 / np.sqrt(EMBEDDING_DIM)
    for name, (_, _, members) in CLUSTERS.items():
        for member in members:
            words.append(member)
            vectors.append(centers[name] + noise * rng.normal(size=EMBEDDING_DIM))
    for lemma, (_, forms) in LEMMAS.items():
        family = [lemma] + forms
        anchor = next((vectors[words.index(w)] for w in family if w in words), None)
        if anchor is None:
            anchor = rng.normal(size=EMBEDDING_DIM) / np.sqrt(EMBEDDING_DIM)
        for word in family:
            if word not in words:
                words.append(word)
                vectors.append(anchor + noise * rng.normal(size=EMBEDDING_DIM))
    for filler in FILLERS:
        if filler not in words:
            words.append(filler)
            vectors.append(rng.normal(size=EMBEDDING_DIM) / np.sqrt(EMBEDDING_DIM))
    return EmbeddingStore(words, np.array(vectors), nn_index_size=settings.NN_INDEX_SIZE)


def toy_pos_lexicon() -> PosLexicon:
    entries: Dict[str, List[PosTag]] = OrderedDict()
    for tag, _, members in CLUSTERS.values():
        for member in members:
            entries.setdefault(member, []).append(tag)
    entries["cast"].append(PosTag.VERB)
    for lemma, (tag, forms) in LEMMAS.items():
        for word in [lemma] + forms:
            entries.setdefault(word, [tag])
    for word, tag in FILLERS.items():
        entries.setdefault(word, [tag])
    return PosLexicon(entries)


def toy_thesaurus() -> SynonymLexicon:
    """Each cluster member lists the other members, tagged with the cluster's part of speech."""
    entries: Dict[str, List[Tuple[str, PosTag]]] = OrderedDict()
    for tag, _, members in CLUSTERS.values():
        for member in members:
            entries[member] = [(other, tag) for other in members if other != member]
    return SynonymLexicon(entries, LexiconKind.THESAURUS)


def toy_sememes() -> SynonymLexicon:
    """Words sharing a sememe: every adjective or verb of the same polarity, every noun of the same cluster."""
    groups: Dict[Tuple[PosTag, int, str], List[str]] = OrderedDict()
    for name, (tag, sign, members) in CLUSTERS.items():
        key = (tag, sign, "" if sign else name)
        groups.setdefault(key, []).extend(members)
    entries: Dict[str, List[Tuple[str, PosTag]]] = OrderedDict()
    for (tag, _, _), members in groups.items():
        for member in members:
            entries[member] = [(other, tag) for other in members if other != member]
    return SynonymLexicon(entries, LexiconKind.SEMEME)


def toy_inflections() -> InflectionTable:
    entries = OrderedDict()
    for lemma, (tag, forms) in LEMMAS.items():
        entries[lemma] = [(lemma, tag)] + [(form, tag) for form in forms]
    return InflectionTable(entries)


@lru_cache(maxsize=None)
def toy_resources() -> ResourceBundle:
    return ResourceBundle(
        embeddings=toy_embeddings(),
        pos_lexicon=toy_pos_lexicon(),
        thesaurus=toy_thesaurus(),
        sememes=toy_sememes(),
        inflections=toy_inflections(),
        stopwords=default_stopwords(),
        charmaps=CharMaps(),
    )


TOY_TRAIN_CONFIG = TrainConfig(epochs=3, batch_size=32, learning_rate=0.5, seed=TOY_SEED)


@lru_cache(maxsize=None)
def toy_model() -> LinearTextClassifier:
    """Linear victim trained briefly on the toy corpus."""
    dataset = toy_dataset()
    model, _ = train_classifier(dataset.texts, dataset.outputs, TOY_TRAIN_CONFIG, label_names=LABEL_NAMES)
    model.model_id = "toy"
    return model


def write_toy_resources(resource_dir: str) -> Dict[str, str]:
    """Write the toy world to `resource_dir` under the configured file names."""
    os.makedirs(resource_dir, exist_ok=True)
    bundle = toy_resources()
    paths = {
        "embeddings": os.path.join(resource_dir, settings.EMBEDDING_FILE),
        "pos_lexicon": os.path.join(resource_dir, settings.POS_LEXICON_FILE),
        "thesaurus": os.path.join(resource_dir, settings.THESAURUS_FILE),
        "sememes": os.path.join(resource_dir, settings.SEMEME_FILE),
        "inflections": os.path.join(resource_dir, settings.INFLECTIONS_FILE),
        "stopwords": os.path.join(resource_dir, settings.STOPWORDS_FILE),
        "translation": os.path.join(resource_dir, settings.TRANSLATION_FILE),
        "model": os.path.join(resource_dir, settings.MODEL_FILE),
        "dataset": os.path.join(resource_dir, "toy_sentiment.csv"),
    }
    bundle.embeddings.dump(paths["embeddings"])
    bundle.pos_lexicon.dump(paths["pos_lexicon"])
    bundle.thesaurus.dump(paths["thesaurus"])
    bundle.sememes.dump(paths["sememes"])
    bundle.inflections.dump(paths["inflections"])
    bundle.stopwords.dump(paths["stopwords"])
    toy_translator().dump(paths["translation"])
    toy_model().save(paths["model"])
    toy_dataset().to_csv(paths["dataset"])
    logger.info("Wrote toy resources to %s", resource_dir)
    return paths

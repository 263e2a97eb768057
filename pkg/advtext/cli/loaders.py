import logging
import os
from dataclasses import replace
from typing import Optional

from advtext.core.config import settings
from advtext.core.errors import ModelFormatError, UsageError
from advtext.datasets import toy
from advtext.datasets.dataset import Dataset
from advtext.resources.bundle import ResourceBundle, load_resources
from advtext.resources.embeddings import EmbeddingStore
from advtext.resources.lexicons import LexiconKind, SynonymLexicon
from advtext.victims.linear import LinearTextClassifier
from advtext.victims.translation import DictionaryTranslator

logger = logging.getLogger(__name__)

BUILTIN_MODELS = {
    "toy": toy.toy_model,
    "toy-translator": toy.toy_translator,
}

BUILTIN_DATASETS = {
    "toy": toy.toy_dataset,
    "toy-translation": toy.toy_translation_dataset,
}


def add_resource_arguments(parser) -> None:
    parser.add_argument("--resource-dir", default=settings.RESOURCE_DIR)
    parser.add_argument("--embedding", help="word vectors file, overriding the one under --resource-dir")
    parser.add_argument("--lexicon", help="synonym lexicon file, overriding the thesaurus under --resource-dir")


def load_resource_bundle(
    resource_dir: Optional[str] = None,
    embedding_path: Optional[str] = None,
    lexicon_path: Optional[str] = None,
) -> ResourceBundle:
    """Resources from `resource_dir`, or the built-in toy world when it holds none.

    `embedding_path` and `lexicon_path` replace the embeddings and thesaurus
    of whichever bundle is chosen.
    """
    for path in (embedding_path, lexicon_path):
        if path and not os.path.exists(path):
            raise UsageError(f"Resource file {path} does not exist")
    resource_dir = resource_dir or settings.RESOURCE_DIR
    if os.path.exists(os.path.join(resource_dir, settings.EMBEDDING_FILE)):
        return load_resources(resource_dir, embedding_path, lexicon_path)
    logger.warning("No embeddings under %s; using the built-in toy resources", resource_dir)
    bundle = toy.toy_resources()
    if embedding_path:
        bundle = replace(bundle, embeddings=EmbeddingStore.load(embedding_path))
    if lexicon_path:
        bundle = replace(bundle, thesaurus=SynonymLexicon.load(lexicon_path, LexiconKind.THESAURUS))
    return bundle


def resource_bundle_from_args(args) -> ResourceBundle:
    return load_resource_bundle(args.resource_dir, args.embedding, args.lexicon)


def load_victim(name: str):
    if name in BUILTIN_MODELS:
        return BUILTIN_MODELS[name]()
    if not os.path.exists(name):
        raise UsageError(f"No model {name!r}; give a model file or one of {', '.join(BUILTIN_MODELS)}")
    extension = os.path.splitext(name)[1].lower()
    if extension == ".json":
        return LinearTextClassifier.load(name)
    if extension in (".tsv", ".txt"):
        return DictionaryTranslator.load(name)
    raise ModelFormatError(f"Cannot tell the model type of {name}; expected .json or .tsv")


def load_dataset(name: str) -> Dataset:
    if name in BUILTIN_DATASETS:
        return BUILTIN_DATASETS[name]()
    if not os.path.exists(name):
        raise UsageError(f"No dataset {name!r}; give a CSV/TSV file or one of {', '.join(BUILTIN_DATASETS)}")
    return Dataset.from_csv(name)

from pydantic import BaseSettings
from typing import Optional
import os
from dotenv import load_dotenv

load_dotenv()

class Settings(BaseSettings):
    PROJECT_NAME: str = "advtext"
    VERSION: str = "0.1.0"

    # Resources
    RESOURCE_DIR: str = os.getenv("ADVTEXT_RESOURCE_DIR", "resources")
    EMBEDDING_FILE: str = "embeddings.txt"
    POS_LEXICON_FILE: str = "pos_lexicon.tsv"
    THESAURUS_FILE: str = "thesaurus.tsv"
    SEMEME_FILE: str = "sememes.tsv"
    STOPWORDS_FILE: str = "stopwords.txt"
    INFLECTIONS_FILE: str = "inflections.tsv"
    CHARMAPS_FILE: str = "charmaps.json"
    TRANSLATION_FILE: str = "translation.tsv"
    MODEL_FILE: str = "toy_model.json"
    EMBEDDING_TYPE: str = "paragramcf"
    NN_INDEX_SIZE: int = 50  # largest max_candidates of any recipe

    # Victims
    UNK_TOKEN: str = "unk"
    NGRAM_BUCKETS: int = 1024

    # Attacks
    DEFAULT_SEED: int = 0
    QUERY_BUDGET: Optional[int] = None
    USE_CACHE: bool = True
    CONSTRAINT_CACHE_SIZE: int = 2**16
    NUM_WORKERS: int = int(os.getenv("ADVTEXT_NUM_WORKERS", "1"))

    # Augmentation / training
    AUGMENT_MAX_RETRIES: int = 20
    ATTACK_PERIOD_EPOCHS: int = 20

    # Logging
    LOG_LEVEL: str = os.getenv("ADVTEXT_LOG_LEVEL", "INFO")
    LOG_CONFIG: str = os.getenv("ADVTEXT_LOG_CONFIG", "logging.ini")

    class Config:
        case_sensitive = True

settings = Settings()

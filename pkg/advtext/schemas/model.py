from typing import List, Tuple

from pydantic import BaseModel, conint, validator

MODEL_FORMAT = "advtext-linear"
MODEL_FORMAT_VERSION = 1


class LinearModelFile(BaseModel):
    """On-disk form of a linear text classifier."""
    format: str = MODEL_FORMAT
    version: int = MODEL_FORMAT_VERSION
    model_id: str
    label_names: List[str]
    vocabulary: List[str]
    ngram_range: Tuple[conint(ge=1), conint(ge=1)] = (2, 4)
    num_buckets: conint(ge=0)
    unk_token: str
    weights: List[List[float]]
    bias: List[float]

    @validator("format")
    def known_format(cls, v):
        if v != MODEL_FORMAT:
            raise ValueError(f"not an {MODEL_FORMAT} model file")
        return v

    @validator("version")
    def supported_version(cls, v):
        if v > MODEL_FORMAT_VERSION:
            raise ValueError(f"model file version {v} is newer than supported version {MODEL_FORMAT_VERSION}")
        return v

    @validator("bias")
    def shapes_agree(cls, v, values):
        labels = values.get("label_names") or []
        vocabulary = values.get("vocabulary") or []
        weights = values.get("weights") or []
        buckets = values.get("num_buckets") or 0
        if len(v) != len(labels) or len(weights) != len(labels):
            raise ValueError("weights and bias need one row per label")
        if any(len(row) != len(vocabulary) + buckets for row in weights):
            raise ValueError("weight rows must cover vocabulary plus hash buckets")
        return v

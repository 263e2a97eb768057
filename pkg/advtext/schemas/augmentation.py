from pydantic import BaseModel, confloat, conint, validator

from advtext.core.config import settings


def normalize_pct(value: float) -> float:
    """Values above 1 are percentages, the rest fractions."""
    return value / 100.0 if value > 1 else value


class AugmenterConfig(BaseModel):
    recipe: str = "embedding"
    pct_words_to_swap: confloat(gt=0, le=1) = 0.1
    transformations_per_example: conint(ge=1) = 1
    seed: int = settings.DEFAULT_SEED
    max_retries: conint(ge=1) = settings.AUGMENT_MAX_RETRIES
    exclude_original: bool = False

    @validator("pct_words_to_swap", pre=True)
    def percent_or_fraction(cls, value):
        return normalize_pct(float(value))

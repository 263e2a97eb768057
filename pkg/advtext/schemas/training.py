from typing import List, Optional

from pydantic import BaseModel, confloat, conint, root_validator

from advtext.core.config import settings


class TrainConfig(BaseModel):
    epochs: conint(ge=0) = 10
    num_clean_epochs: conint(ge=0) = 0
    batch_size: conint(ge=1) = 32
    learning_rate: confloat(gt=0) = 0.5
    seed: int = settings.DEFAULT_SEED
    augment_recipe: Optional[str] = None
    pct_words_to_swap: confloat(gt=0, le=1) = 0.1
    transformations_per_example: conint(ge=1) = 1
    attack_recipe: Optional[str] = None
    attack_period_epochs: conint(ge=1) = settings.ATTACK_PERIOD_EPOCHS
    query_budget: Optional[conint(ge=1)] = None
    early_stopping_patience: Optional[conint(ge=1)] = None

    @root_validator(skip_on_failure=True)
    def clean_epochs_within_epochs(cls, values):
        if values["num_clean_epochs"] > values["epochs"]:
            raise ValueError("num_clean_epochs must not exceed epochs")
        return values


class EpochMetrics(BaseModel):
    epoch: int
    train_loss: float
    train_accuracy: float
    dev_accuracy: Optional[float] = None
    adversarial_examples: int = 0


class TrainHistory(BaseModel):
    epochs: List[EpochMetrics] = []
    train_size: int = 0
    regenerations: List[int] = []
    clean_accuracy: Optional[float] = None
    accuracy_under_attack: Optional[float] = None
    best_epoch: Optional[int] = None

from advtext.goal_functions.base import GoalFunction
from advtext.goal_functions.classification import (
    ClassificationGoalFunction,
    InputReduction,
    TargetedClassification,
    UntargetedClassification,
)
from advtext.goal_functions.text_to_text import MinimizeBleu, NonOverlappingOutput, TextToTextGoalFunction, word_overlap

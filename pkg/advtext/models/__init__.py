from advtext.models.attacked_text import AttackedText, segment_words
from advtext.models.pos import PosTag
from advtext.models.results import AttackResult, AttackStatus, GoalFunctionResult, GoalStatus

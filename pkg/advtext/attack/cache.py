from collections import OrderedDict
from typing import Callable, Optional, Tuple

from advtext.core.config import settings

ConstraintKey = Tuple[int, str, Tuple[int, ...], str, Tuple[int, ...]]


class ResultCache:
    """Constraint verdicts keyed by constraint position plus the text and word
    alignment of both the reference and the candidate.

    Victim outputs are cached by the goal function itself; this cache
    only remembers whether a candidate passed a given constraint. It holds at
    most `max_size` verdicts and evicts the least recently used one first.
    """

    def __init__(self, enabled: bool = True, max_size: Optional[int] = None):
        self.enabled = enabled
        self.max_size = settings.CONSTRAINT_CACHE_SIZE if max_size is None else max_size
        self.constraint_cache: "OrderedDict[ConstraintKey, bool]" = OrderedDict()
        self.hits = 0
        self.misses = 0

    def check(self, key: ConstraintKey, compute: Callable[[], bool]) -> bool:
        if not self.enabled:
            return compute()
        if key in self.constraint_cache:
            self.hits += 1
            self.constraint_cache.move_to_end(key)
            return self.constraint_cache[key]
        self.misses += 1
        verdict = self.constraint_cache[key] = bool(compute())
        if len(self.constraint_cache) > self.max_size:
            self.constraint_cache.popitem(last=False)
        return verdict

    def clear(self) -> None:
        self.constraint_cache.clear()
        self.hits = self.misses = 0

    def __len__(self) -> int:
        return len(self.constraint_cache)

from typing import Dict, List

from pydantic import BaseModel, constr, validator

Char = constr(min_length=1, max_length=1)


class CharMapsFile(BaseModel):
    """Schema for a char-map override file."""
    homoglyphs: Dict[Char, Char] = {}
    keyboard_neighbors: Dict[Char, List[Char]] = {}

    @validator("homoglyphs")
    def substitutes_differ(cls, v):
        same = sorted(k for k, sub in v.items() if k == sub)
        if same:
            raise ValueError(f"homoglyph substitute equals its key for {same}")
        return v

    @validator("keyboard_neighbors")
    def neighbors_exclude_key(cls, v):
        return {k: [c for c in neighbours if c != k] for k, neighbours in v.items()}

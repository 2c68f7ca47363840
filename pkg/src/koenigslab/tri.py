"""Three-valued verdicts shared across the package."""

from __future__ import annotations

from enum import Enum


class TriState(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    @property
    def definite(self) -> bool:
        return self is not TriState.UNKNOWN

    def __bool__(self):
        raise TypeError("TriState is not a boolean; compare explicitly")

    @staticmethod
    def from_bool(b) -> "TriState":
        return TriState.YES if b else TriState.NO

"""Engine failures with single-line messages fit for refinement prompts."""

from __future__ import annotations

UNKNOWN_TABLE = "UnknownTable"
UNKNOWN_COLUMN = "UnknownColumn"
MISSING_GROUP_BY = "MissingGroupBy"
TYPE_MISMATCH = "TypeMismatch"
BAD_BIN = "BadBin"
EMPTY_RESULT = "EmptyResult"  # never raised: an empty table is a legal result

_MAX_MESSAGE = 200


class EngineError(Exception):
    """Raised internally and returned as a value by translate().

    The rendered message matches the SemanticError format where codes
    overlap; it is injected verbatim into the validator prompt.
    """

    def __init__(self, code: str, message: str):
        flat = " ".join(message.split())
        if len(flat) > _MAX_MESSAGE:
            flat = flat[: _MAX_MESSAGE - 3] + "..."
        super().__init__(flat)
        self.code = code
        self.message = flat

    def render(self) -> str:
        return f"{self.code}: {self.message}"

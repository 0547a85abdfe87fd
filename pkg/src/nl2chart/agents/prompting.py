"""Prompt template loading, shot selection, and slot rendering.

Templates are plain-text assets with ``{slot}`` placeholders. Only the
declared slot names are substituted, so literal braces elsewhere in the
text (for example JSON snippets in the worked examples) survive untouched.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources

SLOT_NAMES = (
    "db_id",
    "db_schema",
    "query",
    "desc_str",
    "augmented_explanation",
    "vql",
    "error",
    "db_info",
)

SEPARATOR = "=============================="

DEFAULT_SHOT_COUNT = 4


class TemplateError(Exception):
    """A slot required by the template was left unbound."""


def _read_asset(name: str) -> str:
    return (
        resources.files("nl2chart.agents")
        .joinpath(f"prompts/{name}")
        .read_text(encoding="utf-8")
    )


@dataclass(frozen=True)
class PromptBundle:
    processor_template: str
    composer_single_template: str
    composer_multiple_template: str
    validator_template: str
    shot_count: int = DEFAULT_SHOT_COUNT

    @classmethod
    def load(cls, shot_count: int = DEFAULT_SHOT_COUNT) -> "PromptBundle":
        if not 1 <= shot_count <= 4:
            raise ValueError("shot_count must be between 1 and 4")
        return cls(
            processor_template=_read_asset("processor.txt"),
            composer_single_template=_read_asset("composer_single.txt"),
            composer_multiple_template=_read_asset("composer_multiple.txt"),
            validator_template=_read_asset("validator.txt"),
            shot_count=shot_count,
        )


def select_shots(template: str, shot_count: int) -> str:
    """Keep the first ``shot_count`` worked examples of a few-shot template.

    Example blocks are delimited by the ``===...===`` separator lines; the
    first and last segments are the instruction header and the new-question
    footer.
    """
    segments = template.split(f"{SEPARATOR}\n")
    if len(segments) < 3:
        return template
    head, *examples, tail = segments
    kept = examples[: max(1, shot_count)]
    return f"{SEPARATOR}\n".join([head, *kept, tail])


_SLOT_RE = re.compile(r"\{(" + "|".join(SLOT_NAMES) + r")\}")


def render_template(template: str, **slots: str) -> str:
    """Substitute declared slots in a single pass.

    Slot values are never rescanned, so braces inside schema text or model
    output cannot smuggle markers in; an unbound slot raises TemplateError.
    """
    for name in slots:
        if name not in SLOT_NAMES:
            raise TemplateError(f"unknown slot {name!r}")
    unbound = sorted(
        {m.group(1) for m in _SLOT_RE.finditer(template)} - set(slots)
    )
    if unbound:
        raise TemplateError(f"unbound template slots: {', '.join(unbound)}")
    return _SLOT_RE.sub(lambda m: slots[m.group(1)], template)


def readability_instructions() -> str:
    return _read_asset("readability.txt")

"""Optional model-judged readability scoring (disabled by default).

The gating acceptance suite never calls this: scores come from a
vision-capable model and are inherently non-deterministic. When enabled,
passing cases get a score in [1, 5] that becomes their quality score.
"""

from __future__ import annotations

import re
from pathlib import Path

from ..agents.client import ModelClient
from ..agents.prompting import readability_instructions
from ..engine import ChartSpec, spec_to_json

_NUMBER_RE = re.compile(r"\d+(?:\.\d+)?")


class ScoreParseError(Exception):
    """The judge reply contains no usable numeric score."""


def parse_score(text: str) -> float:
    """First numeral within [1, 5] wins; otherwise clamp the first numeral."""
    numbers = [float(m.group(0)) for m in _NUMBER_RE.finditer(text)]
    if not numbers:
        raise ScoreParseError(f"no numeric score in reply: {text[:80]!r}")
    for value in numbers:
        if 1.0 <= value <= 5.0:
            return value
    return min(5.0, max(1.0, numbers[0]))


def judge_readability(
    client: ModelClient,
    spec: ChartSpec | None = None,
    image_path: str | Path | None = None,
) -> float:
    """Score a chart's readability with a vision-capable judge.

    Accepts either the declarative spec (sent inline as JSON) or a rendered
    image for clients exposing ``complete_with_image``.
    """
    instructions = readability_instructions()
    if image_path is not None and hasattr(client, "complete_with_image"):
        image_bytes = Path(image_path).read_bytes()
        reply = client.complete_with_image(  # type: ignore[attr-defined]
            instructions, image_bytes, temperature=0.0
        )
    elif spec is not None:
        prompt = (
            f"{instructions}\n\nThe chart is described by this declarative "
            f"specification:\n{spec_to_json(spec)}\n\nScore:"
        )
        reply = client.complete(prompt, temperature=0.0)
    else:
        raise ValueError("judge_readability needs a spec or an image")
    return parse_score(reply)

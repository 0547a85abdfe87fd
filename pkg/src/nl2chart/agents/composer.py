"""VQL generation stage: pick the strategy template, extract the final VQL."""

from __future__ import annotations

import re

from .client import ModelClient
from .processor import Classification, ProcessorOutput, ResponseFormatError
from .prompting import PromptBundle, render_template, select_shots

_FINAL_VQL_RE = re.compile(r"Final VQL\s*:", re.IGNORECASE)


def composer_prompt(
    bundle: PromptBundle,
    classification: Classification,
    desc_str: str,
    augmented_explanation: str,
    query: str,
) -> str:
    template = (
        bundle.composer_multiple_template
        if classification is Classification.MULTIPLE
        else bundle.composer_single_template
    )
    template = select_shots(template, bundle.shot_count)
    return render_template(
        template,
        desc_str=desc_str,
        augmented_explanation=augmented_explanation,
        query=query,
    )


def extract_final_vql(response: str) -> str:
    """Single-line VQL following the last ``Final VQL:`` marker."""
    matches = list(_FINAL_VQL_RE.finditer(response))
    if not matches:
        raise ResponseFormatError("Final VQL")
    tail = response[matches[-1].end() :]
    remainder = tail.split("\n", 1)
    candidate = remainder[0].strip()
    if not candidate and len(remainder) > 1:
        for line in remainder[1].splitlines():
            if line.strip():
                candidate = line.strip()
                break
    if not candidate:
        raise ResponseFormatError("Final VQL")
    return candidate


def run_composer(
    client: ModelClient,
    processor_output: ProcessorOutput,
    query: str,
    bundle: PromptBundle | None = None,
) -> str:
    bundle = bundle or PromptBundle.load()
    prompt = composer_prompt(
        bundle,
        processor_output.classification,
        processor_output.new_schema_text,
        processor_output.augmented_explanation,
        query,
    )
    return extract_final_vql(client.complete(prompt, temperature=0.0))

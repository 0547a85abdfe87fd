"""Error-driven refinement stage: send a failing VQL back with its message."""

from __future__ import annotations

import re

from .client import ModelClient
from .processor import ResponseFormatError
from .prompting import PromptBundle, render_template

_CORRECTED_RE = re.compile(r"^\s*\[Corrected VQL\]\s*$", re.IGNORECASE | re.MULTILINE)
_SECTION_RE = re.compile(r"^\s*\[[A-Za-z ]+\]\s*$", re.MULTILINE)


def refine_prompt(
    bundle: PromptBundle, vql: str, error: str, query: str, db_info: str
) -> str:
    return render_template(
        bundle.validator_template,
        query=query,
        db_info=db_info,
        vql=vql,
        error=error,
    )


def extract_corrected_vql(response: str) -> str:
    """The single line under ``[Corrected VQL]``; anything else is an error."""
    header = _CORRECTED_RE.search(response)
    if header is None:
        raise ResponseFormatError("Corrected VQL")
    body = response[header.end() :]
    next_section = _SECTION_RE.search(body)
    if next_section is not None:
        body = body[: next_section.start()]
    lines = [line.strip() for line in body.splitlines() if line.strip()]
    if len(lines) != 1:
        raise ResponseFormatError("Corrected VQL")
    return lines[0]


def run_validator_refine(
    client: ModelClient,
    vql_text: str,
    error: str,
    query: str,
    db_info: str,
    bundle: PromptBundle | None = None,
) -> str:
    if not error:
        raise ValueError("refinement needs a non-empty error message")
    bundle = bundle or PromptBundle.load()
    prompt = refine_prompt(bundle, vql_text, error, query, db_info)
    return extract_corrected_vql(client.complete(prompt, temperature=0.0))

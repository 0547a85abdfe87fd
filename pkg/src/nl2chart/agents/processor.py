"""Schema-preparation stage: filtering, description, and classification.

The model's sectioned response is parsed tolerantly (single quotes and
trailing commas in the filtered-schema block are accepted); after one
re-ask, an unparseable response falls back to the identity filter plus the
table-count classification rule.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from enum import Enum

from ..catalog import (
    CatalogError,
    DatabaseCatalog,
    FilteredSchema,
    apply_filter,
    render_description,
)
from .client import ModelClient
from .prompting import PromptBundle, render_template

logger = logging.getLogger(__name__)

_SECTION_NAMES = (
    "Filtered Schema",
    "New Schema",
    "Augmented Explanation",
    "Classification",
)


class Classification(Enum):
    SINGLE = "SINGLE"
    MULTIPLE = "MULTIPLE"


class ResponseFormatError(Exception):
    """A required section of a model response is missing or garbled."""

    def __init__(self, section: str):
        super().__init__(f"malformed model response: bad section [{section}]")
        self.section = section


@dataclass
class ProcessorOutput:
    filtered_schema: FilteredSchema
    new_schema_text: str
    augmented_explanation: str
    classification: Classification


def classify_rule(filtered: FilteredSchema) -> Classification:
    """MULTIPLE iff the filter keeps two or more tables."""
    if len(filtered.entries) >= 2:
        return Classification.MULTIPLE
    return Classification.SINGLE


def _split_sections(text: str) -> dict[str, str]:
    pattern = re.compile(
        r"^\s*\[(" + "|".join(_SECTION_NAMES) + r")\]\s*$",
        re.IGNORECASE | re.MULTILINE,
    )
    sections: dict[str, str] = {}
    matches = list(pattern.finditer(text))
    for i, match in enumerate(matches):
        name = next(
            n for n in _SECTION_NAMES if n.lower() == match.group(1).lower()
        )
        end = matches[i + 1].start() if i + 1 < len(matches) else len(text)
        sections[name] = text[match.end() : end].strip()
    return sections


def _balanced_braces(text: str) -> str | None:
    start = text.find("{")
    if start < 0:
        return None
    depth = 0
    for i in range(start, len(text)):
        if text[i] == "{":
            depth += 1
        elif text[i] == "}":
            depth -= 1
            if depth == 0:
                return text[start : i + 1]
    return None


def _tolerant_json(block: str) -> dict | None:
    try:
        return json.loads(block)
    except json.JSONDecodeError:
        pass
    relaxed = re.sub(r"'([^']*)'", r'"\1"', block)
    relaxed = re.sub(r",\s*([}\]])", r"\1", relaxed)
    try:
        return json.loads(relaxed)
    except json.JSONDecodeError:
        return None


def _parse_filtered_schema(body: str) -> FilteredSchema:
    block = _balanced_braces(body)
    if block is None:
        raise ResponseFormatError("Filtered Schema")
    payload = _tolerant_json(block)
    if not isinstance(payload, dict) or not payload:
        raise ResponseFormatError("Filtered Schema")
    entries: dict[str, list[str]] = {}
    for table, columns in payload.items():
        if isinstance(columns, str):
            columns = [columns]
        if not isinstance(columns, list) or not all(
            isinstance(c, str) for c in columns
        ):
            raise ResponseFormatError("Filtered Schema")
        entries[str(table)] = list(columns)
    return FilteredSchema(entries)


def parse_processor_response(text: str) -> ProcessorOutput:
    """Parse the bracket-sectioned processor reply.

    [Filtered Schema] and [Classification] are required; the other two
    sections default to empty and are reconstructed by run_processor.
    """
    sections = _split_sections(text)

    if "Filtered Schema" not in sections:
        raise ResponseFormatError("Filtered Schema")
    filtered = _parse_filtered_schema(sections["Filtered Schema"])

    if "Classification" not in sections:
        raise ResponseFormatError("Classification")
    match = re.search(
        r"\b(single|multiple)\b", sections["Classification"], re.IGNORECASE
    )
    if match is None:
        raise ResponseFormatError("Classification")
    classification = Classification(match.group(1).upper())

    return ProcessorOutput(
        filtered_schema=filtered,
        new_schema_text=sections.get("New Schema", ""),
        augmented_explanation=sections.get("Augmented Explanation", ""),
        classification=classification,
    )


def processor_prompt(
    bundle: PromptBundle, catalog: DatabaseCatalog, query: str
) -> str:
    return render_template(
        bundle.processor_template,
        db_id=catalog.db_id,
        db_schema=render_description(catalog),
        query=query,
    )


def run_processor(
    client: ModelClient,
    catalog: DatabaseCatalog,
    query: str,
    bundle: PromptBundle | None = None,
) -> ProcessorOutput:
    """Query the model for schema filtering and classification.

    One automatic re-ask on a malformed reply; then a structured fallback
    (identity filter, rule-based classification) keeps the pipeline moving.
    """
    bundle = bundle or PromptBundle.load()
    prompt = processor_prompt(bundle, catalog, query)
    output: ProcessorOutput | None = None
    for _ in range(2):
        response = client.complete(prompt, temperature=0.0)
        try:
            output = parse_processor_response(response)
            break
        except ResponseFormatError as exc:
            logger.warning("processor response rejected: %s", exc)

    if output is None:
        full = FilteredSchema.full(catalog)
        return ProcessorOutput(
            filtered_schema=full,
            new_schema_text=render_description(catalog),
            augmented_explanation="",
            classification=classify_rule(full),
        )

    rule = classify_rule(output.filtered_schema)
    if rule is not output.classification:
        logger.info(
            "model classification %s disagrees with table-count rule %s; "
            "keeping the model's label",
            output.classification.value,
            rule.value,
        )
    if not output.new_schema_text:
        try:
            projected = apply_filter(catalog, output.filtered_schema)
            output.new_schema_text = render_description(projected)
        except CatalogError:
            output.new_schema_text = render_description(catalog)
    return output

"""Agent workflow: prompt rendering, model clients, and orchestration."""

from .client import (
    CountingClient,
    HttpModelClient,
    MockMiss,
    ModelClient,
    ModelUnavailable,
    ScriptedClient,
    TranscriptEntry,
    approx_tokens,
    client_from_spec,
    prompt_digest,
)
from .composer import composer_prompt, extract_final_vql, run_composer
from .orchestrator import (
    DEFAULT_MAX_ITERS,
    Attempt,
    FailureReport,
    FinalResult,
    OrchestrationResult,
    RefinementTrace,
    orchestrate,
)
from .processor import (
    Classification,
    ProcessorOutput,
    ResponseFormatError,
    classify_rule,
    parse_processor_response,
    processor_prompt,
    run_processor,
)
from .prompting import (
    DEFAULT_SHOT_COUNT,
    SEPARATOR,
    SLOT_NAMES,
    PromptBundle,
    TemplateError,
    readability_instructions,
    render_template,
    select_shots,
)
from .validator import extract_corrected_vql, refine_prompt, run_validator_refine

__all__ = [
    "DEFAULT_MAX_ITERS",
    "DEFAULT_SHOT_COUNT",
    "SEPARATOR",
    "SLOT_NAMES",
    "Attempt",
    "Classification",
    "CountingClient",
    "FailureReport",
    "FinalResult",
    "HttpModelClient",
    "MockMiss",
    "ModelClient",
    "ModelUnavailable",
    "OrchestrationResult",
    "ProcessorOutput",
    "PromptBundle",
    "RefinementTrace",
    "ResponseFormatError",
    "ScriptedClient",
    "TemplateError",
    "TranscriptEntry",
    "approx_tokens",
    "classify_rule",
    "client_from_spec",
    "composer_prompt",
    "extract_corrected_vql",
    "extract_final_vql",
    "orchestrate",
    "parse_processor_response",
    "processor_prompt",
    "prompt_digest",
    "readability_instructions",
    "refine_prompt",
    "run_composer",
    "run_processor",
    "run_validator_refine",
    "select_shots",
]

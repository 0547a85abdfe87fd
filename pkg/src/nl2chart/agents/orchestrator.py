"""The full workflow: process, compose, then validate-and-refine in a loop.

Every VQL attempt and the exact single-line error it produced are recorded
in the trace; the same error text feeds the next refinement prompt, so the
loop is fully reproducible with a scripted client.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable

from ..catalog import CatalogError, DatabaseCatalog, apply_filter, render_description
from ..engine import ChartSpec, DataTable, EngineError, TranslateResult, translate
from ..vql import ParseError, VqlQuery, parse_vql
from .client import CountingClient, ModelClient
from .composer import run_composer
from .processor import ProcessorOutput, ResponseFormatError, run_processor
from .prompting import DEFAULT_SHOT_COUNT, PromptBundle
from .validator import run_validator_refine

logger = logging.getLogger(__name__)

DEFAULT_MAX_ITERS = 3

EventHook = Callable[[str, dict], None]


@dataclass
class Attempt:
    vql_text: str
    parse_ok: bool
    error: str | None


@dataclass
class FinalResult:
    query: VqlQuery
    spec: ChartSpec


@dataclass
class RefinementTrace:
    attempts: list[Attempt] = field(default_factory=list)
    final: FinalResult | None = None

    @property
    def iterations_used(self) -> int:
        return max(0, len(self.attempts) - 1)


@dataclass
class OrchestrationResult:
    spec: ChartSpec
    table: DataTable
    trace: RefinementTrace
    processor: ProcessorOutput
    tokens_used: int = 0


@dataclass
class FailureReport:
    last_error: str
    trace: RefinementTrace
    processor: ProcessorOutput | None = None
    tokens_used: int = 0


def _emit(hook: EventHook | None, stage: str, payload: dict) -> None:
    if hook is not None:
        hook(stage, payload)


def orchestrate(
    client: ModelClient,
    catalog: DatabaseCatalog,
    query: str,
    max_iters: int = DEFAULT_MAX_ITERS,
    bundle: PromptBundle | None = None,
    shot_count: int = DEFAULT_SHOT_COUNT,
    on_event: EventHook | None = None,
) -> OrchestrationResult | FailureReport:
    """Run one question through the three stages with a refinement budget.

    Returns a result with the chart spec and trace, or a FailureReport after
    ``max_iters`` refinements. The trace always holds every attempt.
    """
    if max_iters < 0:
        raise ValueError("max_iters must be >= 0")
    bundle = bundle or PromptBundle.load(shot_count)
    counting = CountingClient(client)

    processor_output = run_processor(counting, catalog, query, bundle)
    _emit(
        on_event,
        "processor_done",
        {
            "filtered_schema": dict(processor_output.filtered_schema.entries),
            "classification": processor_output.classification.value,
        },
    )

    try:
        working_catalog = apply_filter(catalog, processor_output.filtered_schema)
    except CatalogError as exc:
        logger.warning("schema filter unusable (%s); using the full catalog", exc)
        working_catalog = catalog
    db_info = render_description(working_catalog)

    try:
        vql_text = run_composer(counting, processor_output, query, bundle)
    except ResponseFormatError:
        try:
            vql_text = run_composer(counting, processor_output, query, bundle)
        except ResponseFormatError as exc:
            logger.warning("composer reply unusable twice: %s", exc)
            _emit(on_event, "failed", {"last_error": str(exc)})
            return FailureReport(
                last_error=str(exc),
                trace=RefinementTrace(),
                processor=processor_output,
                tokens_used=counting.total_tokens,
            )
    _emit(on_event, "composer_done", {"vql": vql_text})

    trace = RefinementTrace()
    for iteration in range(max_iters + 1):
        parse_ok = True
        error: str | None = None
        try:
            parsed = parse_vql(vql_text)
        except ParseError as exc:
            parse_ok = False
            error = exc.render()
            parsed = None

        if parsed is not None:
            outcome = translate(parsed, working_catalog)
            if isinstance(outcome, TranslateResult):
                trace.attempts.append(Attempt(vql_text, True, None))
                trace.final = FinalResult(query=parsed, spec=outcome.spec)
                _emit(
                    on_event,
                    "final",
                    {"vql": vql_text, "iterations_used": trace.iterations_used},
                )
                return OrchestrationResult(
                    spec=outcome.spec,
                    table=outcome.table,
                    trace=trace,
                    processor=processor_output,
                    tokens_used=counting.total_tokens,
                )
            assert isinstance(outcome, EngineError)
            error = outcome.render()

        trace.attempts.append(Attempt(vql_text, parse_ok, error))
        _emit(
            on_event,
            "attempt_failed",
            {"attempt": iteration, "vql": vql_text, "error": error},
        )

        if iteration == max_iters:
            break
        try:
            vql_text = run_validator_refine(
                counting, vql_text, error, query, db_info, bundle
            )
        except ResponseFormatError as exc:
            logger.warning("refinement reply unusable: %s", exc)
            break

    last_error = trace.attempts[-1].error or "unknown failure"
    _emit(on_event, "failed", {"last_error": last_error})
    return FailureReport(
        last_error=last_error,
        trace=trace,
        processor=processor_output,
        tokens_used=counting.total_tokens,
    )

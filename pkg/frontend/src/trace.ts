/** View models for the collapsible trace inspector. */

import { QueryResponse, TraceAttempt, TracePayload, isFailure } from './types.js';

export interface AttemptView {
  index: number;
  vql: string;
  parseOk: boolean;
  error: string | null;
  ok: boolean;
}

export interface TraceView {
  attempts: AttemptView[];
  iterationsUsed: number;
  sketch: string | null;
  filteredSchema: [table: string, columns: string[]][];
  classification: string | null;
}

function attemptViews(attempts: TraceAttempt[]): AttemptView[] {
  return attempts.map((a, i) => ({
    index: i + 1,
    vql: a.vql,
    parseOk: a.parse_ok,
    error: a.error,
    ok: a.error === null,
  }));
}

export function buildTraceView(trace: TracePayload): TraceView {
  return {
    attempts: attemptViews(trace.attempts),
    iterationsUsed: trace.iterations_used,
    sketch: trace.sketch ?? null,
    filteredSchema: Object.entries(trace.filtered_schema ?? {}),
    classification: trace.classification ?? null,
  };
}

export function traceOf(body: QueryResponse): TraceView {
  return buildTraceView(isFailure(body) ? body.failure.trace : body.trace);
}

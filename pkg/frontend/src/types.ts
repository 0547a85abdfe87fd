/** Wire types for the nl2chart service API (spec_version 1). */

export type Mark =
  | 'bar'
  | 'pie'
  | 'line'
  | 'scatter'
  | 'stacked bar'
  | 'grouped line'
  | 'grouped scatter';

export const COMPLEX_MARKS: ReadonlySet<Mark> = new Set([
  'stacked bar',
  'grouped line',
  'grouped scatter',
]);

export type CellValue = string | number | null;

export interface SortSpec {
  by: 'x' | 'y';
  direction: 'asc' | 'desc';
}

export interface DataColumn {
  name: string;
  role: 'x' | 'y' | 'group' | 'plain';
}

export interface DataTable {
  columns: DataColumn[];
  rows: CellValue[][];
}

export interface ChartSpec {
  spec_version: number;
  mark: Mark;
  x: { field: string; kind: 'categorical' | 'temporal' | 'quantitative'; sort: SortSpec | null };
  y: { field: string };
  group?: { field: string };
  data: DataTable;
  title: string;
  x_label: string;
  y_label: string;
}

export interface TraceAttempt {
  vql: string;
  parse_ok: boolean;
  error: string | null;
}

export interface TracePayload {
  attempts: TraceAttempt[];
  iterations_used: number;
  sketch: string | null;
  tokens_used?: number;
  filtered_schema?: Record<string, string[]>;
  classification?: string;
}

export interface QuerySuccess {
  vql: string;
  chart_spec: ChartSpec;
  data: DataTable;
  trace: TracePayload;
}

export interface QueryFailure {
  failure: { last_error: string; trace: TracePayload };
}

export type QueryResponse = QuerySuccess | QueryFailure;

export function isFailure(body: QueryResponse): body is QueryFailure {
  return 'failure' in body;
}

export interface SessionInfo {
  session_id: string;
  db_id: string;
  created_at: number;
}

export interface SchemaColumn {
  name: string;
  type: string;
  examples: string[];
}

export interface SchemaTable {
  name: string;
  columns: SchemaColumn[];
  row_count: number;
}

export interface SchemaPayload {
  db_id: string;
  tables: SchemaTable[];
  description: string;
}

export interface HistoryEntry {
  query: string;
  result: QueryResponse;
  timestamp: number;
}

export interface StageEvent {
  stage: string;
  [key: string]: unknown;
}

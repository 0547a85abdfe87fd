/** Typed client for the nl2chart service HTTP + SSE API. */

import {
  HistoryEntry,
  QueryResponse,
  SchemaPayload,
  SessionInfo,
  StageEvent,
} from './types.js';

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string
  ) {
    super(message);
  }
}

async function parseError(response: Response): Promise<never> {
  let code = 'HTTP_ERROR';
  let message = `HTTP ${response.status}`;
  try {
    const body = (await response.json()) as { code?: string; message?: string };
    code = body.code ?? code;
    message = body.message ?? message;
  } catch {
    // non-JSON error body; keep the defaults
  }
  throw new ApiError(response.status, code, message);
}

export class ServiceClient {
  constructor(
    private baseUrl: string,
    private fetchImpl: FetchLike = (input, init) => fetch(input, init)
  ) {}

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`);
    if (!response.ok) await parseError(response);
    return (await response.json()) as T;
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    });
    if (!response.ok) await parseError(response);
    return (await response.json()) as T;
  }

  listDatabases(): Promise<{ databases: string[] }> {
    return this.get('/api/databases');
  }

  getSchema(dbId: string): Promise<SchemaPayload> {
    return this.get(`/api/databases/${encodeURIComponent(dbId)}/schema`);
  }

  createSession(dbId: string): Promise<SessionInfo> {
    return this.post('/api/sessions', { db_id: dbId });
  }

  runQuery(sessionId: string, question: string): Promise<QueryResponse> {
    return this.post(`/api/sessions/${encodeURIComponent(sessionId)}/query`, {
      q: question,
    });
  }

  getHistory(sessionId: string): Promise<{
    session_id: string;
    db_id: string;
    history: HistoryEntry[];
  }> {
    return this.get(`/api/sessions/${encodeURIComponent(sessionId)}/history`);
  }

  /** Stream stage events; resolves when the server closes the stream. */
  async streamEvents(
    sessionId: string,
    onEvent: (event: StageEvent) => void,
    options: { after?: number; follow?: boolean; signal?: AbortSignal } = {}
  ): Promise<void> {
    const after = options.after ?? 0;
    const follow = options.follow ? 1 : 0;
    const response = await this.fetchImpl(
      `${this.baseUrl}/api/sessions/${encodeURIComponent(sessionId)}/events?after=${after}&follow=${follow}`,
      { signal: options.signal } as RequestInit
    );
    if (!response.ok) await parseError(response);
    if (!response.body) return;

    const reader = response.body.getReader();
    const decoder = new TextDecoder('utf-8');
    let buffer = '';
    for (;;) {
      const { value, done } = await reader.read();
      if (done) break;
      buffer += decoder.decode(value, { stream: true });
      const frames = buffer.split(/\r?\n\r?\n/);
      buffer = frames.pop() ?? '';
      for (const frame of frames) {
        const event = parseSseFrame(frame);
        if (event) onEvent(event);
      }
    }
  }
}

export function parseSseFrame(frame: string): StageEvent | null {
  let stage = 'message';
  const dataLines: string[] = [];
  for (const rawLine of frame.split(/\r?\n/)) {
    const line = rawLine.replace(/\r$/, '');
    if (line.startsWith('event:')) stage = line.slice(6).trim();
    else if (line.startsWith('data:')) dataLines.push(line.slice(5).trim());
  }
  if (dataLines.length === 0) return null;
  try {
    const payload = JSON.parse(dataLines.join('\n')) as Record<string, unknown>;
    return { ...payload, stage } as StageEvent;
  } catch {
    return { stage, raw: dataLines.join('\n') };
  }
}

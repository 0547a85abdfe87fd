/** Session state machine behind the UI; DOM-free and fully testable.
 *
 * The store is append-only over the service API: every state it reaches is
 * reconstructible from GET /history alone (see hydrateFromHistory).
 */

import { ServiceClient } from './api.js';
import { renderChartSpec, renderErrorCard, UnsupportedSpecError } from './chart.js';
import { traceOf, TraceView } from './trace.js';
import { QueryResponse, StageEvent, isFailure } from './types.js';

export type TurnStatus = 'running' | 'success' | 'failure';

export interface ChatTurn {
  query: string;
  status: TurnStatus;
  stages: string[];
  /** Rendered SVG (success) or an error card (unsupported spec). */
  chartHtml: string | null;
  vql: string | null;
  lastError: string | null;
  trace: TraceView | null;
}

export interface StoreState {
  databases: string[];
  dbId: string | null;
  sessionId: string | null;
  turns: ChatTurn[];
  toast: string | null;
  busy: boolean;
}

export type Listener = (state: StoreState) => void;

export class SessionStore {
  state: StoreState = {
    databases: [],
    dbId: null,
    sessionId: null,
    turns: [],
    toast: null,
    busy: false,
  };

  private listeners: Listener[] = [];
  private eventCursor = 0;

  constructor(private client: ServiceClient) {}

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener(this.state);
  }

  private set(partial: Partial<StoreState>): void {
    this.state = { ...this.state, ...partial };
    this.notify();
  }

  async loadDatabases(): Promise<void> {
    try {
      const { databases } = await this.client.listDatabases();
      this.set({ databases });
    } catch (err) {
      this.set({ toast: `cannot list databases: ${String(err)}` });
    }
  }

  async openSession(dbId: string): Promise<void> {
    try {
      const session = await this.client.createSession(dbId);
      this.set({ dbId, sessionId: session.session_id, turns: [], toast: null });
    } catch (err) {
      this.set({ toast: `cannot open session: ${String(err)}` });
    }
  }

  /** Record a stage event on the in-flight turn. */
  onStageEvent(event: StageEvent): void {
    const turns = [...this.state.turns];
    const current = turns[turns.length - 1];
    if (!current || current.status !== 'running') return;
    current.stages = [...current.stages, event.stage];
    this.set({ turns });
  }

  private applyResult(turn: ChatTurn, body: QueryResponse): ChatTurn {
    if (isFailure(body)) {
      return {
        ...turn,
        status: 'failure',
        lastError: body.failure.last_error,
        trace: traceOf(body),
        chartHtml: null,
      };
    }
    let chartHtml: string;
    try {
      chartHtml = renderChartSpec(body.chart_spec);
    } catch (err) {
      if (err instanceof UnsupportedSpecError) {
        chartHtml = renderErrorCard(err.message);
      } else {
        throw err;
      }
    }
    return {
      ...turn,
      status: 'success',
      vql: body.vql,
      chartHtml,
      trace: traceOf(body),
    };
  }

  /** One in-flight query per session, mirroring the server's serialization. */
  async ask(question: string): Promise<void> {
    const sessionId = this.state.sessionId;
    if (!sessionId || this.state.busy) return;
    const turn: ChatTurn = {
      query: question,
      status: 'running',
      stages: [],
      chartHtml: null,
      vql: null,
      lastError: null,
      trace: null,
    };
    this.set({ turns: [...this.state.turns, turn], busy: true, toast: null });
    // tail stage events in parallel with the blocking query request
    const tail = this.client
      .streamEvents(
        sessionId,
        (event) => {
          this.eventCursor += 1;
          this.onStageEvent(event);
        },
        { after: this.eventCursor, follow: true }
      )
      .catch(() => undefined);
    try {
      const body = await this.client.runQuery(sessionId, question);
      await tail;
      const turns = [...this.state.turns];
      turns[turns.length - 1] = this.applyResult(turn, body);
      this.set({ turns, busy: false });
    } catch (err) {
      // transport failure: the turn stays in history with a toast
      const turns = [...this.state.turns];
      turns[turns.length - 1] = {
        ...turn,
        status: 'failure',
        lastError: String(err),
      };
      this.set({ turns, busy: false, toast: `query failed: ${String(err)}` });
    }
  }

  /** Rebuild every turn from the durable history (refresh-safe). */
  async hydrateFromHistory(sessionId: string, dbId: string): Promise<void> {
    try {
      const { history } = await this.client.getHistory(sessionId);
      const turns = history.map((entry) =>
        this.applyResult(
          {
            query: entry.query,
            status: 'running',
            stages: [],
            chartHtml: null,
            vql: null,
            lastError: null,
            trace: null,
          },
          entry.result
        )
      );
      this.set({ sessionId, dbId, turns });
    } catch (err) {
      this.set({ toast: `cannot load history: ${String(err)}` });
    }
  }
}

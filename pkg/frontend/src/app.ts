/** DOM wiring: database picker, chat column, chart pane, trace inspector. */

import { ServiceClient } from './api.js';
import { SessionStore, StoreState, ChatTurn } from './store.js';

const BASE_URL = (window as unknown as { NL2CHART_API?: string }).NL2CHART_API ?? '';

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderTrace(turn: ChatTurn): HTMLElement {
  const details = el('details', 'trace');
  details.appendChild(el('summary', undefined, 'trace'));
  const trace = turn.trace;
  if (!trace) return details;

  if (trace.filteredSchema.length > 0) {
    const schema = el('div', 'trace-schema');
    schema.appendChild(el('h4', undefined, 'filtered schema'));
    for (const [table, columns] of trace.filteredSchema) {
      schema.appendChild(el('div', 'schema-row', `${table}: ${columns.join(', ')}`));
    }
    details.appendChild(schema);
  }
  if (trace.sketch) {
    const sketch = el('div', 'trace-sketch');
    sketch.appendChild(el('h4', undefined, 'sketch'));
    sketch.appendChild(el('code', undefined, trace.sketch));
    details.appendChild(sketch);
  }
  const attempts = el('div', 'trace-attempts');
  attempts.appendChild(el('h4', undefined, `attempts (${trace.attempts.length})`));
  for (const attempt of trace.attempts) {
    const row = el('div', attempt.ok ? 'attempt ok' : 'attempt failed');
    row.appendChild(el('code', undefined, `#${attempt.index} ${attempt.vql}`));
    if (attempt.error) row.appendChild(el('div', 'attempt-error', attempt.error));
    attempts.appendChild(row);
  }
  details.appendChild(attempts);
  return details;
}

function renderTurn(turn: ChatTurn): HTMLElement {
  const card = el('article', `turn ${turn.status}`);
  card.appendChild(el('div', 'question', turn.query));
  if (turn.status === 'running') {
    card.appendChild(
      el('div', 'stages', turn.stages.length ? turn.stages.join(' > ') : 'working...')
    );
    return card;
  }
  if (turn.vql) {
    const vql = el('div', 'vql');
    vql.appendChild(el('code', undefined, turn.vql));
    card.appendChild(vql);
  }
  if (turn.chartHtml) {
    const chart = el('div', 'chart-holder');
    chart.innerHTML = turn.chartHtml;
    card.appendChild(chart);
  }
  if (turn.lastError) {
    card.appendChild(el('div', 'turn-error', turn.lastError));
  }
  card.appendChild(renderTrace(turn));
  return card;
}

function render(root: HTMLElement, store: SessionStore, state: StoreState): void {
  root.textContent = '';

  const picker = el('div', 'picker');
  const select = el('select');
  select.appendChild(new Option('choose a database...', ''));
  for (const db of state.databases) {
    select.appendChild(new Option(db, db, false, db === state.dbId));
  }
  select.addEventListener('change', () => {
    if (select.value) void store.openSession(select.value);
  });
  picker.appendChild(select);
  root.appendChild(picker);

  if (state.toast) {
    root.appendChild(el('div', 'toast', state.toast));
  }

  const turnsBox = el('div', 'turns');
  for (const turn of state.turns) turnsBox.appendChild(renderTurn(turn));
  root.appendChild(turnsBox);

  if (state.sessionId) {
    const form = el('form', 'ask');
    const input = el('input');
    input.placeholder = 'ask a question about this database...';
    input.disabled = state.busy;
    const button = el('button', undefined, state.busy ? 'running...' : 'ask');
    button.disabled = state.busy;
    form.append(input, button);
    form.addEventListener('submit', (event) => {
      event.preventDefault();
      const question = input.value.trim();
      if (question) {
        void store.ask(question);
        input.value = '';
      }
    });
    root.appendChild(form);
  }
}

export function mount(root: HTMLElement): SessionStore {
  const client = new ServiceClient(BASE_URL);
  const store = new SessionStore(client);
  store.subscribe((state) => render(root, store, state));
  void store.loadDatabases();
  return store;
}

const rootElement = typeof document !== 'undefined' && document.getElementById('app');
if (rootElement) {
  mount(rootElement);
}

/** Inline SVG renderer for chart specs; pure string building, no DOM. */

import { buildChartModel, ChartModel, UnsupportedSpecError } from './chartspec.js';
import { CellValue, ChartSpec } from './types.js';

const WIDTH = 640;
const HEIGHT = 360;
const MARGIN = { top: 36, right: 24, bottom: 84, left: 64 };
const PLOT_W = WIDTH - MARGIN.left - MARGIN.right;
const PLOT_H = HEIGHT - MARGIN.top - MARGIN.bottom;

/** Labels tilt once the axis gets crowded. */
export const ROTATE_LABELS_ABOVE = 8;

const COLORS = [
  '#2563eb', '#059669', '#d97706', '#dc2626',
  '#7c3aed', '#0d9488', '#f59e0b', '#6366f1',
];

function esc(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

function color(i: number): string {
  return COLORS[i % COLORS.length] as string;
}

interface Scale {
  (value: number): number;
}

function linearScale(domainMin: number, domainMax: number, rangeMin: number, rangeMax: number): Scale {
  const span = domainMax - domainMin || 1;
  return (v: number) => rangeMin + ((v - domainMin) / span) * (rangeMax - rangeMin);
}

function numericX(model: ChartModel): number[] {
  return model.series.flatMap((s) =>
    s.points.map((p) => (typeof p.x === 'number' ? p.x : 0))
  );
}

function allY(model: ChartModel): number[] {
  return model.series.flatMap((s) => s.points.map((p) => p.y));
}

function stackTotals(model: ChartModel): Map<string, number> {
  const totals = new Map<string, number>();
  for (const series of model.series) {
    for (const p of series.points) {
      const key = String(p.x);
      totals.set(key, (totals.get(key) ?? 0) + Math.max(0, p.y));
    }
  }
  return totals;
}

function xAxisLabels(categories: CellValue[]): string {
  const rotate = categories.length > ROTATE_LABELS_ABOVE;
  const step = PLOT_W / Math.max(1, categories.length);
  return categories
    .map((c, i) => {
      const cx = MARGIN.left + step * (i + 0.5);
      const y = MARGIN.top + PLOT_H + 16;
      const transform = rotate ? ` transform="rotate(-45 ${cx} ${y})"` : '';
      const anchor = rotate ? 'end' : 'middle';
      return `<text class="tick" x="${cx}" y="${y}" text-anchor="${anchor}"${transform}>${esc(String(c))}</text>`;
    })
    .join('');
}

function yAxisTicks(maxY: number): string {
  const ticks = 4;
  let out = '';
  for (let i = 0; i <= ticks; i++) {
    const value = (maxY / ticks) * i;
    const y = MARGIN.top + PLOT_H - (PLOT_H / ticks) * i;
    out += `<text class="tick" x="${MARGIN.left - 8}" y="${y + 4}" text-anchor="end">${esc(
      value.toFixed(value >= 10 || value === 0 ? 0 : 2)
    )}</text>`;
    out += `<line class="grid" x1="${MARGIN.left}" y1="${y}" x2="${MARGIN.left + PLOT_W}" y2="${y}" />`;
  }
  return out;
}

function legend(model: ChartModel): string {
  if (!model.hasLegend) return '';
  const entries = model.series
    .map((s, i) => {
      const y = MARGIN.top + 16 * i;
      return (
        `<rect class="legend-swatch" x="${WIDTH - 120}" y="${y}" width="10" height="10" fill="${color(i)}" />` +
        `<text class="legend-label" x="${WIDTH - 104}" y="${y + 9}">${esc(String(s.group))}</text>`
      );
    })
    .join('');
  return `<g class="legend">${entries}</g>`;
}

function frame(spec: ChartSpec, body: string, extra = ''): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${WIDTH} ${HEIGHT}" class="chart" role="img">` +
    `<title>${esc(spec.title)}</title>` +
    `<text class="chart-title" x="${WIDTH / 2}" y="20" text-anchor="middle">${esc(spec.title)}</text>` +
    body +
    extra +
    `<text class="axis-label x" x="${MARGIN.left + PLOT_W / 2}" y="${HEIGHT - 6}" text-anchor="middle">${esc(spec.x_label)}</text>` +
    `<text class="axis-label y" x="14" y="${MARGIN.top + PLOT_H / 2}" text-anchor="middle" transform="rotate(-90 14 ${MARGIN.top + PLOT_H / 2})">${esc(spec.y_label)}</text>` +
    `</svg>`
  );
}

function renderBars(model: ChartModel, stacked: boolean): string {
  const { categories } = model;
  const maxY = Math.max(
    1e-9,
    ...(stacked ? [...stackTotals(model).values()] : allY(model))
  );
  const yScale = linearScale(0, maxY, 0, PLOT_H);
  const step = PLOT_W / Math.max(1, categories.length);
  const groupCount = stacked ? 1 : model.series.length;
  const barWidth = (step * 0.7) / Math.max(1, groupCount);
  const offsets = new Map<string, number>();

  let bars = '';
  model.series.forEach((series, si) => {
    for (const p of series.points) {
      const ci = categories.findIndex((c) => String(c) === String(p.x));
      if (ci < 0) continue;
      const h = yScale(Math.max(0, p.y));
      let x: number;
      let y: number;
      if (stacked) {
        const key = String(p.x);
        const below = offsets.get(key) ?? 0;
        offsets.set(key, below + h);
        x = MARGIN.left + step * ci + step * 0.15;
        y = MARGIN.top + PLOT_H - below - h;
      } else {
        x = MARGIN.left + step * ci + step * 0.15 + barWidth * si;
        y = MARGIN.top + PLOT_H - h;
      }
      bars += `<rect class="bar" data-x="${esc(String(p.x))}" data-series="${esc(
        String(series.group ?? '')
      )}" x="${x.toFixed(2)}" y="${y.toFixed(2)}" width="${(stacked ? step * 0.7 : barWidth).toFixed(2)}" height="${h.toFixed(2)}" fill="${color(si)}" />`;
    }
  });
  return yAxisTicks(maxY) + bars + xAxisLabels(categories);
}

function renderLines(model: ChartModel): string {
  const { categories } = model;
  const maxY = Math.max(1e-9, ...allY(model));
  const yScale = linearScale(0, maxY, 0, PLOT_H);
  const step = PLOT_W / Math.max(1, categories.length);

  let lines = '';
  model.series.forEach((series, si) => {
    const points = series.points
      .map((p) => {
        const ci = categories.findIndex((c) => String(c) === String(p.x));
        const x = MARGIN.left + step * (ci + 0.5);
        const y = MARGIN.top + PLOT_H - yScale(p.y);
        return `${x.toFixed(2)},${y.toFixed(2)}`;
      })
      .join(' ');
    lines += `<polyline class="line" data-series="${esc(String(series.group ?? ''))}" points="${points}" fill="none" stroke="${color(si)}" stroke-width="2" />`;
  });
  return yAxisTicks(maxY) + lines + xAxisLabels(categories);
}

function renderScatter(model: ChartModel): string {
  const xs = numericX(model);
  const maxY = Math.max(1e-9, ...allY(model));
  const minX = Math.min(0, ...xs);
  const maxX = Math.max(1e-9, ...xs);
  const xScale = linearScale(minX, maxX, MARGIN.left, MARGIN.left + PLOT_W);
  const yScale = linearScale(0, maxY, 0, PLOT_H);

  let dots = '';
  model.series.forEach((series, si) => {
    for (const p of series.points) {
      const xv = typeof p.x === 'number' ? p.x : 0;
      dots += `<circle class="dot" data-series="${esc(String(series.group ?? ''))}" cx="${xScale(xv).toFixed(2)}" cy="${(
        MARGIN.top + PLOT_H - yScale(p.y)
      ).toFixed(2)}" r="4" fill="${color(si)}" />`;
    }
  });
  return yAxisTicks(maxY) + dots;
}

function renderPie(model: ChartModel): string {
  const points = model.series.flatMap((s) => s.points).filter((p) => p.y > 0);
  const total = points.reduce((acc, p) => acc + p.y, 0) || 1;
  const cx = WIDTH / 2;
  const cy = MARGIN.top + PLOT_H / 2;
  const r = Math.min(PLOT_W, PLOT_H) / 2.2;

  let angle = -Math.PI / 2;
  let wedges = '';
  points.forEach((p, i) => {
    const sweep = (p.y / total) * Math.PI * 2;
    const x1 = cx + r * Math.cos(angle);
    const y1 = cy + r * Math.sin(angle);
    angle += sweep;
    const x2 = cx + r * Math.cos(angle);
    const y2 = cy + r * Math.sin(angle);
    const large = sweep > Math.PI ? 1 : 0;
    wedges += `<path class="wedge" data-x="${esc(String(p.x))}" d="M${cx},${cy} L${x1.toFixed(2)},${y1.toFixed(2)} A${r},${r} 0 ${large} 1 ${x2.toFixed(2)},${y2.toFixed(2)} Z" fill="${color(i)}" />`;
    const mid = angle - sweep / 2;
    wedges += `<text class="tick" x="${(cx + r * 1.12 * Math.cos(mid)).toFixed(2)}" y="${(
      cy + r * 1.12 * Math.sin(mid)
    ).toFixed(2)}" text-anchor="middle">${esc(String(p.x))}</text>`;
  });
  return wedges;
}

/** Render a chart spec to an SVG string; throws UnsupportedSpecError. */
export function renderChartSpec(spec: ChartSpec): string {
  const model = buildChartModel(spec);
  if (spec.data.rows.length === 0) {
    return frame(
      spec,
      `<text class="empty-state" x="${WIDTH / 2}" y="${HEIGHT / 2}" text-anchor="middle">no data to display</text>`
    );
  }
  let body: string;
  switch (spec.mark) {
    case 'bar':
      body = renderBars(model, false);
      break;
    case 'stacked bar':
      body = renderBars(model, true);
      break;
    case 'line':
    case 'grouped line':
      body = renderLines(model);
      break;
    case 'scatter':
    case 'grouped scatter':
      body = renderScatter(model);
      break;
    case 'pie':
      body = renderPie(model);
      break;
    default:
      body = renderBars(model, false);
  }
  return frame(spec, body, legend(model));
}

/** HTML error card shown for spec versions this client cannot read. */
export function renderErrorCard(message: string): string {
  return `<div class="error-card">${esc(message)}</div>`;
}

export { UnsupportedSpecError };

/** Chart-spec validation and series extraction (pure, renderer-agnostic). */

import { ChartSpec, CellValue } from './types.js';

export const SUPPORTED_SPEC_VERSION = 1;

export interface Series {
  /** Group value, or null for ungrouped charts. */
  group: string | null;
  points: { x: CellValue; y: number }[];
}

export interface ChartModel {
  spec: ChartSpec;
  /** X values in row order, deduplicated (row order is chart order). */
  categories: CellValue[];
  series: Series[];
  hasLegend: boolean;
}

export class UnsupportedSpecError extends Error {
  constructor(version: unknown) {
    super(`unsupported spec version: ${String(version)}`);
  }
}

function roleIndex(spec: ChartSpec, role: string): number {
  return spec.data.columns.findIndex((c) => c.role === role);
}

export function buildChartModel(spec: ChartSpec): ChartModel {
  if (spec.spec_version !== SUPPORTED_SPEC_VERSION) {
    throw new UnsupportedSpecError(spec.spec_version);
  }
  const xi = roleIndex(spec, 'x');
  const yi = roleIndex(spec, 'y');
  const gi = roleIndex(spec, 'group');

  const categories: CellValue[] = [];
  const seen = new Set<string>();
  const byGroup = new Map<string | null, Series>();

  for (const row of spec.data.rows) {
    const x = (xi >= 0 ? row[xi] : null) ?? null;
    const rawY = yi >= 0 ? row[yi] : null;
    const y = typeof rawY === 'number' ? rawY : 0;
    const groupValue = gi >= 0 ? String(row[gi]) : null;

    const xKey = String(x);
    if (!seen.has(xKey)) {
      seen.add(xKey);
      categories.push(x);
    }
    let series = byGroup.get(groupValue);
    if (!series) {
      series = { group: groupValue, points: [] };
      byGroup.set(groupValue, series);
    }
    series.points.push({ x, y });
  }

  return {
    spec,
    categories,
    series: [...byGroup.values()],
    hasLegend: Boolean(spec.group),
  };
}

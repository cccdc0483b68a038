/** Saturation figure: per-complexity similarity KDE shading plus mean markers,
 * optionally with a log-scaled complexity axis. */

import { TrialRecord } from './csv.js';
import { kdeCurve } from './kde.js';
import { groupBy, mean } from './stats.js';
import { Svg, fmt, makeScale } from './svg.js';

export interface SaturationSpec {
  valueField?: 'dl' | 'jw';
  bandwidth?: number;
  logX?: boolean;
  title?: string;
  width?: number;
  height?: number;
}

export interface ComplexityGroup {
  complexity: number;
  values: number[];
  mean: number;
}

export function complexityGroups(
  records: TrialRecord[],
  valueField: 'dl' | 'jw' = 'dl',
): ComplexityGroup[] {
  const usable = records.filter((r) => !r.failed && Number.isFinite(r[valueField]));
  const groups = groupBy(usable, (r) => String(r.seed_complexity));
  const out: ComplexityGroup[] = [];
  for (const rows of groups.values()) {
    const values = rows.map((r) => r[valueField]);
    out.push({ complexity: rows[0].seed_complexity, values, mean: mean(values) });
  }
  out.sort((a, b) => a.complexity - b.complexity);
  return out;
}

export function renderSaturationPlot(records: TrialRecord[], spec: SaturationSpec = {}): string {
  const valueField = spec.valueField ?? 'dl';
  const bandwidth = spec.bandwidth ?? 0.01;
  const groups = complexityGroups(records, valueField);
  if (groups.length === 0) throw new Error('no non-failed records to plot');

  const width = spec.width ?? 800;
  const height = spec.height ?? 420;
  const margin = { top: 40, right: 30, bottom: 50, left: 70 };
  const cLo = groups[0].complexity;
  const cHi = groups[groups.length - 1].complexity;
  const x = makeScale(
    cLo === cHi ? cLo - 1 : cLo,
    cHi === cLo ? cHi + 1 : cHi,
    margin.left,
    width - margin.right,
    spec.logX ?? false,
  );
  const y = makeScale(0, 1.05, height - margin.bottom, margin.top);

  const svg = new Svg(width, height);
  if (spec.title) svg.text(width / 2, 20, spec.title, 14);
  svg.line(margin.left, margin.top, margin.left, height - margin.bottom);
  svg.line(margin.left, height - margin.bottom, width - margin.right, height - margin.bottom);
  for (const v of [0, 0.25, 0.5, 0.75, 1.0]) {
    svg.text(margin.left - 8, y(v) + 4, v.toFixed(2), 10, 'end');
    svg.line(margin.left - 4, y(v), margin.left, y(v));
  }

  // gray KDE shading: density drawn as a sideways bump around each complexity
  const slot = (width - margin.left - margin.right) / Math.max(groups.length, 1);
  const halfWidth = Math.min(slot * 0.45, 40);
  for (const g of groups) {
    const cx = x(g.complexity);
    const curve = kdeCurve(g.values, bandwidth, -0.05, 1.1, 120);
    const peak = Math.max(...curve.map(([, d]) => d), 1e-12);
    let d = `M ${fmt(cx)} ${fmt(y(curve[0][0]))}`;
    for (const [val, dens] of curve) {
      d += ` L ${fmt(cx + (dens / peak) * halfWidth)} ${fmt(y(val))}`;
    }
    for (let i = curve.length - 1; i >= 0; i--) {
      const [val, dens] = curve[i];
      d += ` L ${fmt(cx - (dens / peak) * halfWidth)} ${fmt(y(val))}`;
    }
    d += ' Z';
    svg.path(d, '#bbbbbb', 'none', 0.6);
  }
  for (const g of groups) {
    svg.circle(x(g.complexity), y(g.mean), 3.5, '#1f4e9c');
    svg.text(x(g.complexity), height - margin.bottom + 16, String(g.complexity), 10);
  }
  svg.text(width / 2, height - 12,
    'seed string complexity' + (spec.logX ? ' (log scale)' : ''), 11);
  svg.text(14, height / 2, `${valueField} similarity`, 11);
  return svg.render();
}

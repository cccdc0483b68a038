/** Tukey box plots of a record field, one box per group. */

import { TrialRecord, requireColumn } from './csv.js';
import { BoxStats, boxStats, groupBy } from './stats.js';
import { Svg, makeScale } from './svg.js';

export interface BoxPlotSpec {
  groupKeys: string[];
  valueField: string;
  logY?: boolean;
  title?: string;
  width?: number;
  height?: number;
}

export interface LabeledBox {
  label: string;
  stats: BoxStats;
}

export function computeBoxes(
  records: TrialRecord[],
  groupKeys: string[],
  valueField: string,
): LabeledBox[] {
  requireColumn(records, valueField);
  for (const k of groupKeys) requireColumn(records, k);
  const usable = records.filter(
    (r) => !r.failed && Number.isFinite((r as unknown as Record<string, number>)[valueField]),
  );
  const groups = groupBy(usable, (r) =>
    groupKeys.map((k) => String((r as unknown as Record<string, unknown>)[k])).join(' / '),
  );
  const out: LabeledBox[] = [];
  for (const [label, rows] of groups) {
    const values = rows.map((r) => (r as unknown as Record<string, number>)[valueField]);
    out.push({ label, stats: boxStats(values) });
  }
  out.sort((a, b) => (a.label < b.label ? -1 : a.label > b.label ? 1 : 0));
  return out;
}

export function renderBoxPlot(records: TrialRecord[], spec: BoxPlotSpec): string {
  const boxes = computeBoxes(records, spec.groupKeys, spec.valueField);
  if (boxes.length === 0) throw new Error('no non-failed records to plot');
  const width = spec.width ?? 800;
  const height = spec.height ?? 420;
  const margin = { top: 40, right: 20, bottom: 80, left: 70 };

  let lo = Infinity;
  let hi = -Infinity;
  for (const b of boxes) {
    const all = [b.stats.whiskerLow, b.stats.whiskerHigh, ...b.stats.outliers];
    for (const v of all) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  if (lo === hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  if (spec.logY) {
    lo = Math.max(lo, 1e-9);
    hi = Math.max(hi, lo * 10);
  }
  const y = makeScale(lo, hi, height - margin.bottom, margin.top, spec.logY);

  const svg = new Svg(width, height);
  if (spec.title) svg.text(width / 2, 20, spec.title, 14);
  svg.line(margin.left, margin.top, margin.left, height - margin.bottom);
  svg.line(margin.left, height - margin.bottom, width - margin.right, height - margin.bottom);

  // y tick labels at the data extremes and quartile midline
  for (const v of [lo, (lo + hi) / 2, hi]) {
    svg.text(margin.left - 8, y(v) + 4, v.toPrecision(4), 10, 'end');
    svg.line(margin.left - 4, y(v), margin.left, y(v));
  }

  const plotWidth = width - margin.left - margin.right;
  const slot = plotWidth / boxes.length;
  const boxWidth = Math.min(slot * 0.6, 60);
  boxes.forEach((b, i) => {
    const cx = margin.left + slot * (i + 0.5);
    const s = b.stats;
    // whiskers
    svg.line(cx, y(s.whiskerLow), cx, y(s.q1));
    svg.line(cx, y(s.q3), cx, y(s.whiskerHigh));
    svg.line(cx - boxWidth / 4, y(s.whiskerLow), cx + boxWidth / 4, y(s.whiskerLow));
    svg.line(cx - boxWidth / 4, y(s.whiskerHigh), cx + boxWidth / 4, y(s.whiskerHigh));
    // IQR box and dotted median
    svg.rect(cx - boxWidth / 2, y(s.q3), boxWidth, y(s.q1) - y(s.q3), '#d0d8e8');
    svg.line(cx - boxWidth / 2, y(s.median), cx + boxWidth / 2, y(s.median),
      'black', 'stroke-dasharray="3,2"');
    for (const o of s.outliers) {
      svg.circle(cx, y(o), 2.5);
    }
    svg.text(cx, height - margin.bottom + 16, b.label, 10);
    svg.text(cx, height - margin.bottom + 30, `n=${s.count}`, 9);
  });
  svg.text(14, height / 2, spec.valueField + (spec.logY ? ' (log scale)' : ''), 11);
  return svg.render();
}

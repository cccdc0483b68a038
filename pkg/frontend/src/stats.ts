/** Quantile and Tukey box statistics matching the experiment harness:
 * linear interpolation between closest ranks (type 7), whiskers at the
 * furthest points within 1.5*IQR of the quartiles. */

export interface BoxStats {
  median: number;
  q1: number;
  q3: number;
  whiskerLow: number;
  whiskerHigh: number;
  outliers: number[];
  count: number;
}

export function mean(values: number[]): number {
  if (values.length === 0) throw new Error('mean of empty list');
  return values.reduce((a, b) => a + b, 0) / values.length;
}

export function quantile(sorted: number[], q: number): number {
  if (sorted.length === 0) throw new Error('quantile of empty list');
  const h = (sorted.length - 1) * q;
  const lo = Math.floor(h);
  const hi = Math.ceil(h);
  return sorted[lo] + (h - lo) * (sorted[hi] - sorted[lo]);
}

export function boxStats(values: number[]): BoxStats {
  if (values.length === 0) throw new Error('box stats of empty group');
  const v = [...values].sort((a, b) => a - b);
  const q1 = quantile(v, 0.25);
  const median = quantile(v, 0.5);
  const q3 = quantile(v, 0.75);
  const iqr = q3 - q1;
  const loFence = q1 - 1.5 * iqr;
  const hiFence = q3 + 1.5 * iqr;
  const inside = v.filter((x) => x >= loFence && x <= hiFence);
  const outliers = v.filter((x) => x < loFence || x > hiFence);
  return {
    median,
    q1,
    q3,
    whiskerLow: inside[0],
    whiskerHigh: inside[inside.length - 1],
    outliers,
    count: v.length,
  };
}

export function groupBy<T>(
  rows: T[],
  keyOf: (row: T) => string,
): Map<string, T[]> {
  const groups = new Map<string, T[]>();
  for (const row of rows) {
    const key = keyOf(row);
    const bucket = groups.get(key);
    if (bucket) bucket.push(row);
    else groups.set(key, [row]);
  }
  return groups;
}

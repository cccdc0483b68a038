/** Reader for the experiment harness records.csv (fixed, documented schema). */

import { readFileSync } from 'node:fs';
import Papa from 'papaparse';

export const RECORD_COLUMNS = [
  'name', 'seed_k', 'seed_complexity', 'min_length', 'cell', 'layers',
  'units', 'lr', 'stop_rule', 'repeat', 'epochs', 'stop_reason',
  'wall_seconds', 'loss', 'accuracy', 'dl', 'jw', 'failed',
] as const;

export interface TrialRecord {
  name: string;
  seed_k: number;
  seed_complexity: number;
  min_length: number;
  cell: string;
  layers: number;
  units: number;
  lr: number;
  stop_rule: string;
  repeat: number;
  epochs: number;
  stop_reason: string;
  wall_seconds: number;
  loss: number;
  accuracy: number;
  dl: number;
  jw: number;
  failed: boolean;
}

const INT_COLUMNS = new Set([
  'seed_k', 'seed_complexity', 'min_length', 'layers', 'units', 'repeat', 'epochs',
]);
const FLOAT_COLUMNS = new Set([
  'lr', 'wall_seconds', 'loss', 'accuracy', 'dl', 'jw',
]);

export class SchemaError extends Error {}

export function parseRecords(text: string): TrialRecord[] {
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    throw new SchemaError(`CSV parse error: ${parsed.errors[0].message}`);
  }
  const fields = parsed.meta.fields ?? [];
  for (const col of RECORD_COLUMNS) {
    if (!fields.includes(col)) {
      throw new SchemaError(`records CSV is missing column "${col}"`);
    }
  }
  return parsed.data.map((row) => {
    const rec: Record<string, unknown> = {};
    for (const col of RECORD_COLUMNS) {
      const raw = row[col];
      if (INT_COLUMNS.has(col)) rec[col] = parseInt(raw, 10);
      else if (FLOAT_COLUMNS.has(col)) rec[col] = parseFloat(raw);
      else if (col === 'failed') rec[col] = raw === 'True' || raw === 'true';
      else rec[col] = raw;
    }
    return rec as unknown as TrialRecord;
  });
}

export function readRecords(path: string): TrialRecord[] {
  return parseRecords(readFileSync(path, 'utf8'));
}

export function requireColumn(records: TrialRecord[], column: string): void {
  if (!(RECORD_COLUMNS as readonly string[]).includes(column)) {
    throw new SchemaError(`unknown column "${column}"`);
  }
  void records;
}

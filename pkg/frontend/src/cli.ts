#!/usr/bin/env node
/** figures CLI: render a plot from harness records.csv.
 *
 *   seqlab-figures --records records.csv --which training-time --out fig.svg
 */

import { writeFileSync } from 'node:fs';
import { parseArgs } from 'node:util';
import { readRecords } from './csv.js';
import { FigureKind, renderFigure } from './figures.js';

const KINDS: FigureKind[] = ['training-time', 'similarity', 'layers', 'saturation'];

export function main(argv = process.argv.slice(2)): void {
  const { values } = parseArgs({
    args: argv,
    options: {
      records: { type: 'string' },
      which: { type: 'string' },
      out: { type: 'string' },
      'log-x': { type: 'boolean', default: false },
    },
  });
  if (!values.records || !values.which || !values.out) {
    throw new Error('usage: seqlab-figures --records <csv> --which <kind> --out <file>');
  }
  if (!KINDS.includes(values.which as FigureKind)) {
    throw new Error(`--which must be one of ${KINDS.join(', ')}`);
  }
  if (!values.out.endsWith('.svg')) {
    throw new Error('only .svg output is supported');
  }
  const records = readRecords(values.records);
  const svg = renderFigure(records, values.which as FigureKind, {
    logX: values['log-x'],
  });
  writeFileSync(values.out, svg);
  console.log(`wrote ${values.out} (${records.length} records)`);
}

if (process.argv[1] && process.argv[1].endsWith('cli.js')) {
  main();
}

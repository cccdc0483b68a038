/** The canned figure variants, mirroring the experiment study layouts. */

import { TrialRecord } from './csv.js';
import { renderBoxPlot } from './boxplot.js';
import { renderSaturationPlot } from './saturation.js';

export type FigureKind = 'training-time' | 'similarity' | 'layers' | 'saturation';

export function renderFigure(
  records: TrialRecord[],
  which: FigureKind,
  opts: { logX?: boolean } = {},
): string {
  switch (which) {
    case 'training-time':
      return renderBoxPlot(records, {
        groupKeys: ['cell', 'lr', 'stop_rule'],
        valueField: 'wall_seconds',
        logY: true,
        title: 'Training time by cell, learning rate, and stopping criterion',
      });
    case 'similarity':
      return renderBoxPlot(records, {
        groupKeys: ['cell'],
        valueField: 'dl',
        title: 'Forecast similarity (Damerau-Levenshtein) by cell',
      });
    case 'layers':
      return renderBoxPlot(records, {
        groupKeys: ['cell', 'layers'],
        valueField: 'dl',
        title: 'Forecast similarity by cell and layer count',
      });
    case 'saturation':
      return renderSaturationPlot(records, {
        logX: opts.logX ?? false,
        title: 'Mean forecast similarity vs. seed complexity',
      });
    default:
      throw new Error(`unknown figure kind "${which}"`);
  }
}

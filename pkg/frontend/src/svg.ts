/** Tiny deterministic SVG builder: fixed canvas, standard fonts, and a
 * stable number format so identical inputs yield byte-identical files. */

export const FONT = 'font-family="Helvetica, Arial, sans-serif"';

export function fmt(x: number): string {
  if (!Number.isFinite(x)) throw new Error(`non-finite coordinate ${x}`);
  // strip trailing zeros to keep output stable across call sites
  return Number(x.toFixed(3)).toString();
}

export class Svg {
  private parts: string[] = [];

  constructor(readonly width: number, readonly height: number) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}">`,
      `<rect width="${width}" height="${height}" fill="white"/>`,
    );
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke = 'black', extra = ''): void {
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ` +
        `stroke="${stroke}"${extra ? ' ' + extra : ''}/>`,
    );
  }

  rect(x: number, y: number, w: number, h: number, fill = 'none', stroke = 'black'): void {
    this.parts.push(
      `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" ` +
        `fill="${fill}" stroke="${stroke}"/>`,
    );
  }

  circle(cx: number, cy: number, r: number, fill = 'black'): void {
    this.parts.push(`<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(r)}" fill="${fill}"/>`);
  }

  path(d: string, fill = 'none', stroke = 'black', opacity = 1): void {
    this.parts.push(
      `<path d="${d}" fill="${fill}" stroke="${stroke}"` +
        (opacity !== 1 ? ` fill-opacity="${opacity}"` : '') +
        '/>',
    );
  }

  text(x: number, y: number, content: string, size = 11, anchor = 'middle'): void {
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" ${FONT} font-size="${size}" ` +
        `text-anchor="${anchor}">${escapeXml(content)}</text>`,
    );
  }

  render(): string {
    return this.parts.join('\n') + '\n</svg>\n';
  }
}

export function escapeXml(s: string): string {
  return s
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

/** Linear or log10 mapping from data values to pixel coordinates. */
export function makeScale(
  lo: number,
  hi: number,
  pixLo: number,
  pixHi: number,
  log = false,
): (x: number) => number {
  if (log && (lo <= 0 || hi <= 0)) {
    throw new Error('log scale requires positive data');
  }
  const a = log ? Math.log10(lo) : lo;
  const b = log ? Math.log10(hi) : hi;
  const span = b - a || 1;
  return (x: number) => {
    const v = log ? Math.log10(x) : x;
    return pixLo + ((v - a) / span) * (pixHi - pixLo);
  };
}

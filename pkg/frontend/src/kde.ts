/** Gaussian kernel density estimate used for the saturation figure
 * (bandwidth expressed in similarity units, default 0.01). */

const INV_SQRT_2PI = 1 / Math.sqrt(2 * Math.PI);

export function gaussianKernel(u: number): number {
  return INV_SQRT_2PI * Math.exp(-0.5 * u * u);
}

export function kdeAt(samples: number[], bandwidth: number, x: number): number {
  if (samples.length === 0) throw new Error('kde of empty sample');
  if (bandwidth <= 0) throw new Error('bandwidth must be positive');
  let sum = 0;
  for (const s of samples) {
    sum += gaussianKernel((x - s) / bandwidth);
  }
  return sum / (samples.length * bandwidth);
}

export function kdeCurve(
  samples: number[],
  bandwidth: number,
  lo: number,
  hi: number,
  points = 200,
): Array<[number, number]> {
  const out: Array<[number, number]> = [];
  for (let i = 0; i < points; i++) {
    const x = lo + ((hi - lo) * i) / (points - 1);
    out.push([x, kdeAt(samples, bandwidth, x)]);
  }
  return out;
}

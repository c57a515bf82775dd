/**
 * Symmetric diverging colormap, blue (negative) through white (zero) to red
 * (positive), so phase-space negativity is visually unambiguous.
 */

export type Rgb = [number, number, number];

const NEGATIVE: Rgb = [33, 102, 172];
const ZERO: Rgb = [247, 247, 247];
const POSITIVE: Rgb = [178, 24, 43];

function mix(a: Rgb, b: Rgb, t: number): Rgb {
  return [
    Math.round(a[0] + (b[0] - a[0]) * t),
    Math.round(a[1] + (b[1] - a[1]) * t),
    Math.round(a[2] + (b[2] - a[2]) * t),
  ];
}

/** Map value to color given the symmetric limit; t outside [-limit, limit] clamps. */
export function diverging(value: number, limit: number): Rgb {
  if (!(limit > 0)) {
    return ZERO;
  }
  const t = Math.max(-1, Math.min(1, value / limit));
  return t < 0 ? mix(ZERO, NEGATIVE, -t) : mix(ZERO, POSITIVE, t);
}

/** Symmetric color limit for a set of fields: the largest |value| anywhere. */
export function symmetricLimit(values: number[][]): number {
  let peak = 0;
  for (const grid of values) {
    for (const v of grid) {
      const a = Math.abs(v);
      if (a > peak) peak = a;
    }
  }
  return peak;
}

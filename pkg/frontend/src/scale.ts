/** Linear mapping from data space to pixel space. */
export class LinearScale {
  constructor(
    private readonly d0: number,
    private readonly d1: number,
    private readonly r0: number,
    private readonly r1: number,
  ) {}

  apply(v: number): number {
    const span = this.d1 - this.d0 || 1;
    return this.r0 + ((v - this.d0) / span) * (this.r1 - this.r0);
  }

  invert(px: number): number {
    const span = this.r1 - this.r0 || 1;
    return this.d0 + ((px - this.r0) / span) * (this.d1 - this.d0);
  }
}

export function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return [lo, hi];
}

export interface Viewport {
  x: LinearScale;
  y: LinearScale;
}

export function viewport(
  coords: [number, number][],
  width: number,
  height: number,
  margin: number,
): Viewport {
  const [x0, x1] = extent(coords.map((c) => c[0]));
  const [y0, y1] = extent(coords.map((c) => c[1]));
  return {
    x: new LinearScale(x0, x1, margin, width - margin),
    // flip: data y grows upward, pixel y downward
    y: new LinearScale(y0, y1, height - margin, margin),
  };
}

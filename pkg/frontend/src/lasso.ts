/** Client-side lasso selection: even-odd point-in-polygon over the
 * rendered (data-space) coordinates. */

export function pointInPolygon(px: number, py: number, ring: [number, number][]): boolean {
  let inside = false;
  let [x0, y0] = ring[ring.length - 1];
  for (const [x1, y1] of ring) {
    if (y0 > py !== y1 > py) {
      const xCross = x0 + ((py - y0) * (x1 - x0)) / (y1 - y0);
      if (px < xCross) inside = !inside;
    }
    [x0, y0] = [x1, y1];
  }
  return inside;
}

export function selectWithLasso(
  coords: [number, number][],
  lasso: [number, number][],
): number[] {
  if (lasso.length < 3) return [];
  const ids: number[] = [];
  coords.forEach(([x, y], i) => {
    if (pointInPolygon(x, y, lasso)) ids.push(i);
  });
  return ids;
}

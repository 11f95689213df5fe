import { viewport } from "../scale.js";
import type { EmbeddingFragment, Polygon, RangesetFragment } from "../types.js";
import { resolveColor } from "../types.js";

export interface EmbeddingRenderOptions {
  width?: number;
  height?: number;
  glyphRadius?: number;
  selection?: Set<number>;
  selectionOutline?: Polygon[];
  hover?: number | null;
}

const OUTLIER_FACTOR = 1.8;

function polygonPath(polygon: Polygon, sx: (x: number) => number, sy: (y: number) => number): string {
  return polygon
    .map((ring) => {
      const pts = ring
        .slice(0, -1)
        .map(([x, y]) => `${sx(x).toFixed(2)} ${sy(y).toFixed(2)}`)
        .join(" L ");
      return `M ${pts} Z`;
    })
    .join(" ");
}

/** Scatterplot with the rangeset overlay: translucent bin polygons under
 * the glyphs, outliers enlarged and re-drawn on top, the shared selection
 * as a gray outline offset by its stroke width so fills stay legible. */
export function buildEmbeddingSvg(
  embedding: EmbeddingFragment,
  rangeset: RangesetFragment | null,
  options: EmbeddingRenderOptions = {},
): string {
  const width = options.width ?? 760;
  const height = options.height ?? 560;
  const r = options.glyphRadius ?? 3;
  const selection = options.selection ?? new Set<number>();
  const vp = viewport(embedding.coords, width, height, 4 * r);
  const sx = (x: number) => vp.x.apply(x);
  const sy = (y: number) => vp.y.apply(y);

  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
  ];

  const pointColor = new Map<number, string>();
  const outliers: { id: number; color: string }[] = [];

  parts.push(`<g class="contours">`);
  if (rangeset) {
    for (const bin of rangeset.bins) {
      const color = resolveColor(bin.color);
      for (const id of bin.member_ids) pointColor.set(id, color);
      for (const id of bin.outlier_ids) outliers.push({ id, color });
      for (const id of bin.uncovered_ids) outliers.push({ id, color });
      for (const polygon of bin.polygons) {
        parts.push(
          `<path class="contour" d="${polygonPath(polygon, sx, sy)}" ` +
            `fill="${color}" fill-opacity="0.5" fill-rule="evenodd" ` +
            `stroke="${color}" stroke-width="1"/>`,
        );
      }
    }
  }
  parts.push(`</g>`);

  // custom selection outline beneath the glyphs, offset by edge width
  if (options.selectionOutline && options.selectionOutline.length) {
    parts.push(`<g class="selection-outline">`);
    for (const polygon of options.selectionOutline) {
      parts.push(
        `<path d="${polygonPath(polygon, sx, sy)}" fill="none" ` +
          `stroke="#666666" stroke-width="3" stroke-offset="3" opacity="0.9"/>`,
      );
    }
    parts.push(`</g>`);
  }

  const outlierIds = new Set(outliers.map((o) => o.id));
  parts.push(`<g class="points">`);
  embedding.coords.forEach(([x, y], id) => {
    if (outlierIds.has(id)) return;
    const color = pointColor.get(id) ?? "#888888";
    const selected = selection.has(id);
    parts.push(
      `<circle cx="${sx(x).toFixed(2)}" cy="${sy(y).toFixed(2)}" r="${r}" ` +
        `fill="${color}" stroke="${selected ? "#222222" : "#555555"}" ` +
        `stroke-width="${selected ? 2 : 0.5}"/>`,
    );
  });
  parts.push(`</g>`);

  parts.push(`<g class="outliers">`);
  for (const { id, color } of outliers) {
    const [x, y] = embedding.coords[id];
    const selected = selection.has(id);
    parts.push(
      `<circle cx="${sx(x).toFixed(2)}" cy="${sy(y).toFixed(2)}" r="${(r * OUTLIER_FACTOR).toFixed(2)}" ` +
        `fill="${color}" stroke="${selected ? "#222222" : "#333333"}" ` +
        `stroke-width="${selected ? 2 : 1}"/>`,
    );
  }
  parts.push(`</g>`);

  if (options.hover !== null && options.hover !== undefined) {
    const [x, y] = embedding.coords[options.hover];
    parts.push(
      `<circle class="hover" cx="${sx(x).toFixed(2)}" cy="${sy(y).toFixed(2)}" ` +
        `r="${r * 2.4}" fill="none" stroke="#000000" stroke-width="1.5"/>`,
    );
  }

  parts.push(`</svg>`);
  return parts.join("");
}

/** Count of contour path elements in a rendered frame (test hook). */
export function countPolygons(svg: string): number {
  return (svg.match(/class="contour"/g) ?? []).length;
}

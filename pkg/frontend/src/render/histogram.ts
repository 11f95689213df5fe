import type { HistogramFragment } from "../types.js";
import { resolveColor } from "../types.js";

export interface HistogramRenderOptions {
  width?: number;
  height?: number;
}

/** Bin-count bars above the axis, per-bin rangeset outlier counts as bars
 * extending in the negative y-direction, and out-of-range points as
 * glyphs below the axis. */
export function buildHistogramSvg(
  hist: HistogramFragment,
  options: HistogramRenderOptions = {},
): string {
  const width = options.width ?? 220;
  const height = options.height ?? 120;
  const margin = 6;
  const k = hist.counts.length;
  const axisY = height * 0.68;
  const maxCount = Math.max(...hist.counts, 1);
  const maxOut = Math.max(...hist.outlier_counts, 1);
  const bw = (width - 2 * margin) / k;

  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
  ];

  hist.counts.forEach((count, i) => {
    const h = (count / maxCount) * (axisY - margin);
    const x = margin + i * bw;
    parts.push(
      `<rect class="count-bar" data-bin="${i}" x="${(x + 1).toFixed(2)}" ` +
        `y="${(axisY - h).toFixed(2)}" width="${(bw - 2).toFixed(2)}" height="${h.toFixed(2)}" ` +
        `fill="${resolveColor(hist.colors[i])}" stroke="#444" stroke-width="0.5"/>`,
    );
  });

  // outlier counts extend downward from the axis
  hist.outlier_counts.forEach((count, i) => {
    if (count === 0) return;
    const h = (count / maxOut) * (height - axisY - margin - 8);
    const x = margin + i * bw;
    parts.push(
      `<rect class="outlier-bar" data-bin="${i}" data-count="${count}" ` +
        `x="${(x + bw * 0.25).toFixed(2)}" y="${axisY.toFixed(2)}" ` +
        `width="${(bw * 0.5).toFixed(2)}" height="${h.toFixed(2)}" ` +
        `fill="#999999" stroke="#444" stroke-width="0.5"/>`,
    );
  });

  // out-of-range values: glyphs below the axis at the extremal ends
  hist.below_range.forEach((_, j) => {
    parts.push(
      `<circle class="below-range" cx="${(margin + 3 + j * 5).toFixed(2)}" ` +
        `cy="${(height - margin - 3).toFixed(2)}" r="2" fill="#555"/>`,
    );
  });
  hist.above_range.forEach((_, j) => {
    parts.push(
      `<circle class="above-range" cx="${(width - margin - 3 - j * 5).toFixed(2)}" ` +
        `cy="${(height - margin - 3).toFixed(2)}" r="2" fill="#555"/>`,
    );
  });

  parts.push(
    `<line class="axis" x1="${margin}" y1="${axisY.toFixed(2)}" ` +
      `x2="${width - margin}" y2="${axisY.toFixed(2)}" stroke="#333" stroke-width="1"/>`,
  );
  parts.push(`</svg>`);
  return parts.join("");
}

/** Outlier-bar counts as rendered, for cross-checking against the API. */
export function renderedOutlierCounts(svg: string, binCount: number): number[] {
  const counts = new Array<number>(binCount).fill(0);
  const re = /class="outlier-bar" data-bin="(\d+)" data-count="(\d+)"/g;
  let m: RegExpExecArray | null;
  while ((m = re.exec(svg)) !== null) {
    counts[Number(m[1])] = Number(m[2]);
  }
  return counts;
}

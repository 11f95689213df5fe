import { LinearScale } from "../scale.js";
import type { TopologyFragment } from "../types.js";

export interface TopologyRenderOptions {
  width?: number;
  height?: number;
  logScale?: boolean;
}

/** Step-function outline of a count series over the thresholds. */
function stepPath(
  thresholds: number[],
  counts: number[],
  nBefore: number,
  sx: LinearScale,
  sy: (v: number) => number,
  epsMax: number,
): string {
  const pts: string[] = [];
  pts.push(`${sx.apply(0).toFixed(2)},${sy(nBefore).toFixed(2)}`);
  let prev = nBefore;
  for (let i = 0; i < thresholds.length; i++) {
    const x = sx.apply(thresholds[i]).toFixed(2);
    pts.push(`${x},${sy(prev).toFixed(2)}`);
    pts.push(`${x},${sy(counts[i]).toFixed(2)}`);
    prev = counts[i];
  }
  pts.push(`${sx.apply(epsMax).toFixed(2)},${sy(prev).toFixed(2)}`);
  return pts.join(" ");
}

/** Area chart of component/outlier counts versus the threshold, with a
 * draggable marker at the current value. The y axis can switch to a
 * logarithmic scale; threshold (x) positions are unaffected. */
export function buildTopologySvg(
  topology: TopologyFragment,
  epsilon: number,
  options: TopologyRenderOptions = {},
): string {
  const width = options.width ?? 520;
  const height = options.height ?? 180;
  const margin = 24;
  const n = topology.n_vertices;
  const sx = new LinearScale(0, topology.epsilon_max, margin, width - margin);

  const yMax = Math.max(n, 1);
  const sy = (v: number): number => {
    if (options.logScale) {
      const lv = Math.log10(1 + Math.max(0, v));
      const lmax = Math.log10(1 + yMax);
      return height - margin - (lv / lmax) * (height - 2 * margin);
    }
    return height - margin - (v / yMax) * (height - 2 * margin);
  };

  const singles = stepPath(
    topology.thresholds, topology.singletons, n, sx, sy, topology.epsilon_max,
  );
  const multi = stepPath(
    topology.thresholds, topology.multi_components, 0, sx, sy, topology.epsilon_max,
  );
  const baseline = sy(0).toFixed(2);
  const markerX = sx.apply(Math.min(epsilon, topology.epsilon_max)).toFixed(2);

  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
    `<polygon class="singleton-band" points="${sx.apply(0).toFixed(2)},${baseline} ${singles} ${sx
      .apply(topology.epsilon_max)
      .toFixed(2)},${baseline}" fill="#bbbbbb" opacity="0.7"/>`,
    `<polygon class="component-band" points="${sx.apply(0).toFixed(2)},${baseline} ${multi} ${sx
      .apply(topology.epsilon_max)
      .toFixed(2)},${baseline}" fill="#2b83ba" opacity="0.7"/>`,
    `<line class="axis" x1="${margin}" y1="${baseline}" x2="${width - margin}" y2="${baseline}" stroke="#333"/>`,
    `<line class="eps-marker" x1="${markerX}" y1="${margin}" x2="${markerX}" y2="${baseline}" ` +
      `stroke="#d7191c" stroke-width="2" cursor="ew-resize"/>`,
    `</svg>`,
  ].join("");
}

/** Counts at the marker, straight from the fragment (no recomputation). */
export function countsAt(topology: TopologyFragment, epsilon: number): {
  multi: number;
  singletons: number;
} {
  let idx = -1;
  for (let i = 0; i < topology.thresholds.length; i++) {
    if (topology.thresholds[i] <= epsilon) idx = i;
    else break;
  }
  if (idx < 0) return { multi: 0, singletons: topology.n_vertices };
  return {
    multi: topology.multi_components[idx],
    singletons: topology.singletons[idx],
  };
}

import type { EmbeddingFragment, HistogramFragment, RangesetFragment } from "../types.js";
import { buildEmbeddingSvg } from "./embedding.js";
import { buildHistogramSvg } from "./histogram.js";

export interface MultipleData {
  attribute: string;
  rangeset: RangesetFragment;
  histogram: HistogramFragment;
}

/** Grid of miniature rangeset charts with their histograms; every chart
 * shares the same selection set. Toggling an attribute off simply drops
 * its cell (no recompute: data stays cached by the caller). */
export function buildSmallMultiples(
  embedding: EmbeddingFragment,
  data: MultipleData[],
  enabled: Set<string>,
  selection: Set<number>,
): string {
  const cells = data
    .filter((d) => enabled.has(d.attribute))
    .map((d) => {
      const chart = buildEmbeddingSvg(embedding, d.rangeset, {
        width: 220,
        height: 170,
        glyphRadius: 1.5,
        selection,
      });
      const hist = buildHistogramSvg(d.histogram);
      return (
        `<div class="multiple" data-attr="${d.attribute}">` +
        `<div class="multiple-title">${d.attribute}</div>${chart}${hist}</div>`
      );
    });
  return `<div class="multiples-grid">${cells.join("")}</div>`;
}

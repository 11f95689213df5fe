/** Payload shapes of the JSON API. The UI performs no geometric
 * computation of its own; everything visual derives from these. */

export interface AttributeInfo {
  name: string;
  kind: "continuous" | "categorical";
  missing_count: number;
  selected: boolean;
  data_min?: number | null;
  data_max?: number | null;
  categories?: string[];
}

export interface DatasetFragment {
  schema_version: number;
  path: string;
  fingerprint: string;
  n_rows: number;
  attributes: AttributeInfo[];
}

export interface EpsilonInfo {
  value: number;
  source: "auto" | "config";
  suggested: number | null;
}

export interface EmbeddingFragment {
  method: string;
  stress: number | null;
  eigenvalue_energy: number | null;
  coords: [number, number][];
  row_ids: number[];
  epsilon: EpsilonInfo;
}

/** One polygon: outer ring first, then holes; rings are closed. */
export type Polygon = [number, number][][];

export interface BinFragment {
  bin_index: number;
  label: string;
  color: string;
  member_ids: number[];
  covered_ids: number[];
  outlier_ids: number[];
  uncovered_ids: number[];
  polygons: Polygon[];
  hole_count: number;
}

export interface RangesetFragment {
  attribute: string;
  epsilon: number;
  mode: string;
  bins: BinFragment[];
}

export interface TopologyFragment {
  thresholds: number[];
  multi_components: number[];
  singletons: number[];
  merge_events: [number, [number, number]][];
  n_vertices: number;
  epsilon_max: number;
}

export interface HistogramFragment {
  attribute: string;
  kind: "continuous" | "categorical";
  counts: number[];
  labels: string[];
  colors: string[];
  below_range: number[];
  above_range: number[];
  missing_count: number;
  outlier_counts: number[];
  bin_edges?: number[];
  categories?: string[];
}

export interface QualityFragment {
  metric: string;
  k: number;
  values: number[];
}

export interface OutlineResponse {
  polygons: Polygon[];
  outlier_ids: number[];
}

/** Five-class palette used by the service's symbolic color keys. */
export const PALETTE: Record<string, string> = {
  blue: "#2b83ba",
  green: "#abdda4",
  yellow: "#ffffbf",
  orange: "#fdae61",
  red: "#d7191c",
};

export function resolveColor(key: string): string {
  return PALETTE[key] ?? key;
}

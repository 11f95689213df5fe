import type {
  DatasetFragment,
  EmbeddingFragment,
  HistogramFragment,
  OutlineResponse,
  QualityFragment,
  RangesetFragment,
  TopologyFragment,
} from "./types.js";

export interface RangesetParams {
  eps?: number;
  bins?: number;
  mode?: string;
}

/** Thin typed wrapper over the JSON endpoints. */
export class ApiClient {
  constructor(private readonly base: string = "") {}

  private async get<T>(path: string, params?: Record<string, unknown>): Promise<T> {
    const url = new URL(this.base + path, this.base ? undefined : "http://localhost");
    const query = new URLSearchParams();
    for (const [k, v] of Object.entries(params ?? {})) {
      if (v !== undefined && v !== null) query.set(k, String(v));
    }
    const qs = query.toString();
    const target = this.base
      ? `${this.base}${path}${qs ? "?" + qs : ""}`
      : `${url.pathname}${qs ? "?" + qs : ""}`;
    const resp = await fetch(target);
    if (!resp.ok) {
      throw new Error(`${path} failed: ${resp.status} ${await resp.text()}`);
    }
    return (await resp.json()) as T;
  }

  dataset(): Promise<DatasetFragment> {
    return this.get("/api/dataset");
  }

  embedding(): Promise<EmbeddingFragment> {
    return this.get("/api/embedding");
  }

  topology(): Promise<TopologyFragment> {
    return this.get("/api/topology");
  }

  quality(): Promise<QualityFragment> {
    return this.get("/api/quality");
  }

  rangeset(attr: string, params: RangesetParams = {}): Promise<RangesetFragment> {
    return this.get("/api/rangeset", { attr, ...params });
  }

  histogram(attr: string, params: RangesetParams = {}): Promise<HistogramFragment> {
    return this.get("/api/histogram", { attr, ...params });
  }

  async outline(ids: number[], eps?: number): Promise<OutlineResponse> {
    const resp = await fetch(`${this.base}/api/outline`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(eps === undefined ? { ids } : { ids, eps }),
    });
    if (!resp.ok) throw new Error(`outline failed: ${resp.status}`);
    return (await resp.json()) as OutlineResponse;
  }
}

import { ApiClient } from "./api.js";
import { selectWithLasso } from "./lasso.js";
import { buildEmbeddingSvg } from "./render/embedding.js";
import { buildHistogramSvg } from "./render/histogram.js";
import { buildSmallMultiples, MultipleData } from "./render/multiples.js";
import { buildTopologySvg, countsAt } from "./render/topology.js";
import { Debouncer, SequencedFetcher } from "./scheduler.js";
import { initialState, Store } from "./state.js";
import { viewport } from "./scale.js";
import type {
  DatasetFragment,
  EmbeddingFragment,
  HistogramFragment,
  Polygon,
  RangesetFragment,
  TopologyFragment,
} from "./types.js";

interface Frame {
  rangeset: RangesetFragment;
  histogram: HistogramFragment;
}

const api = new ApiClient("");

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function showError(message: string): void {
  const banner = el<HTMLDivElement>("error-banner");
  banner.textContent = message;
  banner.style.display = "block";
  setTimeout(() => (banner.style.display = "none"), 4000);
}

async function boot(): Promise<void> {
  let dataset: DatasetFragment;
  let embedding: EmbeddingFragment;
  let topology: TopologyFragment;
  try {
    [dataset, embedding, topology] = await Promise.all([
      api.dataset(),
      api.embedding(),
      api.topology(),
    ]);
  } catch (err) {
    showError(`service unreachable: ${err}`);
    return;
  }

  const continuous = dataset.attributes.filter((a) => a.kind === "continuous");
  const store = new Store(
    initialState(continuous[0]?.name ?? dataset.attributes[0].name, embedding.epsilon.value),
  );

  let frame: Frame | null = null; // last good frame stays on API failure
  let selectionOutline: Polygon[] = [];
  const multiplesCache = new Map<string, MultipleData>();

  const renderEmbedding = (): void => {
    el("embedding").innerHTML = buildEmbeddingSvg(embedding, frame?.rangeset ?? null, {
      selection: store.state.selection,
      selectionOutline,
      hover: store.state.hover,
    });
    attachLasso();
  };

  const renderHistogram = (): void => {
    el("histogram").innerHTML = frame ? buildHistogramSvg(frame.histogram) : "";
  };

  const renderTopology = (): void => {
    el("topology").innerHTML = buildTopologySvg(topology, store.state.epsilon, {
      logScale: store.state.logTopologyAxis,
    });
    const counts = countsAt(topology, store.state.epsilon);
    el("topology-readout").textContent =
      `ε = ${store.state.epsilon.toFixed(3)} | components: ${counts.multi} | outliers: ${counts.singletons}`;
  };

  const renderMultiples = (): void => {
    const data = [...multiplesCache.values()];
    el("multiples").innerHTML = buildSmallMultiples(
      embedding, data, store.state.enabledMultiples, store.state.selection,
    );
  };

  // sequence-numbered rangeset updates; stale responses never render
  const fetcher = new SequencedFetcher<Frame>(
    async () => {
      const { activeAttribute, epsilon, ranges } = store.state;
      const range = ranges[activeAttribute];
      const params = range
        ? { eps: epsilon, lo: range[0], hi: range[1] }
        : { eps: epsilon };
      const [rangeset, histogram] = await Promise.all([
        api.rangeset(activeAttribute, params),
        api.histogram(activeAttribute, params),
      ]);
      return { rangeset, histogram };
    },
    (value) => {
      frame = value;
      renderEmbedding();
      renderHistogram();
    },
    (err) => showError(`recompute failed: ${err}`),
  );
  const debouncer = new Debouncer(100);
  const refresh = (): void => debouncer.schedule(() => fetcher.request());

  // --- controls ----------------------------------------------------------

  const attrSelect = el<HTMLSelectElement>("attribute");
  for (const a of dataset.attributes) {
    const opt = document.createElement("option");
    opt.value = a.name;
    opt.textContent = `${a.name} (${a.kind})`;
    attrSelect.appendChild(opt);
  }
  attrSelect.value = store.state.activeAttribute;
  attrSelect.addEventListener("change", () => {
    store.update({ activeAttribute: attrSelect.value });
    syncRangeInputs();
    refresh();
  });

  const epsSlider = el<HTMLInputElement>("epsilon");
  epsSlider.min = "0";
  epsSlider.max = String(topology.epsilon_max);
  epsSlider.step = String(topology.epsilon_max / 400);
  epsSlider.value = String(store.state.epsilon);
  epsSlider.addEventListener("input", () => {
    store.update({ epsilon: Number(epsSlider.value) });
    renderTopology(); // marker tracks instantly; contours follow debounced
    refresh();
  });

  const lo = el<HTMLInputElement>("range-lo");
  const hi = el<HTMLInputElement>("range-hi");
  const syncRangeInputs = (): void => {
    const info = dataset.attributes.find((a) => a.name === store.state.activeAttribute);
    const stored = store.state.ranges[store.state.activeAttribute];
    lo.value = String(stored?.[0] ?? info?.data_min ?? 0);
    hi.value = String(stored?.[1] ?? info?.data_max ?? 1);
    const categorical = info?.kind !== "continuous";
    lo.disabled = hi.disabled = categorical;
  };
  const onRangeEdit = (): void => {
    const a = Number(lo.value);
    const b = Number(hi.value);
    if (!(a < b)) return;
    store.update({
      ranges: { ...store.state.ranges, [store.state.activeAttribute]: [a, b] },
    });
    refresh();
  };
  lo.addEventListener("change", onRangeEdit);
  hi.addEventListener("change", onRangeEdit);
  syncRangeInputs();

  const logToggle = el<HTMLInputElement>("log-axis");
  logToggle.addEventListener("change", () => {
    store.update({ logTopologyAxis: logToggle.checked });
    renderTopology();
  });

  el("topology").addEventListener("click", (ev) => {
    const svg = el("topology").querySelector("svg");
    if (!svg) return;
    const rect = svg.getBoundingClientRect();
    const frac = (ev.clientX - rect.left - 24) / (rect.width - 48);
    const eps = Math.max(0, Math.min(1, frac)) * topology.epsilon_max;
    epsSlider.value = String(eps);
    store.update({ epsilon: eps });
    renderTopology();
    refresh();
  });

  // small-multiples checkboxes: toggling off never recomputes
  const boxHost = el("multiples-toggles");
  for (const a of dataset.attributes) {
    const label = document.createElement("label");
    const box = document.createElement("input");
    box.type = "checkbox";
    box.addEventListener("change", async () => {
      if (box.checked && !multiplesCache.has(a.name)) {
        try {
          const [rangeset, histogram] = await Promise.all([
            api.rangeset(a.name, { eps: store.state.epsilon }),
            api.histogram(a.name, { eps: store.state.epsilon }),
          ]);
          multiplesCache.set(a.name, { attribute: a.name, rangeset, histogram });
        } catch (err) {
          showError(`small multiple failed: ${err}`);
          box.checked = false;
          return;
        }
      }
      store.toggleMultiple(a.name);
      renderMultiples();
    });
    label.appendChild(box);
    label.appendChild(document.createTextNode(a.name));
    boxHost.appendChild(label);
  }

  // --- lasso selection (client-side point-in-polygon) ---------------------
  function attachLasso(): void {
    const svg = el("embedding").querySelector("svg");
    if (!svg) return;
    let path: [number, number][] = [];
    let active = false;

    const toData = (ev: MouseEvent): [number, number] => {
      const rect = svg.getBoundingClientRect();
      const vp = viewport(embedding.coords, rect.width, rect.height, 12);
      return [vp.x.invert(ev.clientX - rect.left), vp.y.invert(ev.clientY - rect.top)];
    };
    svg.addEventListener("mousedown", (ev) => {
      if (!(ev as MouseEvent).shiftKey) return;
      active = true;
      path = [toData(ev as MouseEvent)];
    });
    svg.addEventListener("mousemove", (ev) => {
      if (active) path.push(toData(ev as MouseEvent));
    });
    svg.addEventListener("mouseup", async () => {
      if (!active) return;
      active = false;
      const ids = selectWithLasso(embedding.coords, path);
      store.setSelection(ids);
      try {
        selectionOutline = ids.length
          ? (await api.outline(ids, store.state.epsilon)).polygons
          : [];
      } catch {
        selectionOutline = [];
      }
      renderEmbedding();
      renderMultiples();
    });
  }

  renderTopology();
  refresh();
}

boot();

/** Shared view state: one selection set for every view. */

export interface ViewState {
  activeAttribute: string;
  epsilon: number;
  ranges: Record<string, [number, number]>;
  selection: Set<number>;
  enabledMultiples: Set<string>;
  hover: number | null;
  logTopologyAxis: boolean;
}

type Listener = (state: ViewState) => void;

export class Store {
  private listeners: Listener[] = [];

  constructor(public state: ViewState) {}

  subscribe(fn: Listener): () => void {
    this.listeners.push(fn);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== fn);
    };
  }

  update(patch: Partial<ViewState>): void {
    this.state = { ...this.state, ...patch };
    for (const fn of this.listeners) fn(this.state);
  }

  setSelection(ids: Iterable<number>): void {
    this.update({ selection: new Set(ids) });
  }

  toggleMultiple(attr: string): void {
    const enabled = new Set(this.state.enabledMultiples);
    if (enabled.has(attr)) enabled.delete(attr);
    else enabled.add(attr);
    this.update({ enabledMultiples: enabled });
  }
}

export function initialState(activeAttribute: string, epsilon: number): ViewState {
  return {
    activeAttribute,
    epsilon,
    ranges: {},
    selection: new Set(),
    enabledMultiples: new Set(),
    hover: null,
    logTopologyAxis: false,
  };
}

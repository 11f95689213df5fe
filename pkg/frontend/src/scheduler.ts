/** Debounced, sequence-numbered request scheduling.
 *
 * Slider scrubbing fires far faster than rangesets recompute, so requests
 * are debounced (~100 ms) and every dispatched request carries a sequence
 * number; a response is applied only while no response with a higher
 * sequence number has been applied yet. Out-of-order arrivals can never
 * paint a stale frame over a newer one.
 */

export class Debouncer {
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(private readonly delayMs: number = 100) {}

  schedule(fn: () => void): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      fn();
    }, this.delayMs);
  }

  cancel(): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = null;
  }
}

export interface Applied<T> {
  seq: number;
  value: T;
}

/** Latest-wins fetch wrapper: `request` dispatches immediately with the
 * next sequence number; stale and failed responses are dropped. */
export class SequencedFetcher<T> {
  private nextSeq = 0;
  private appliedSeq = -1;
  private readonly applied: Applied<T>[] = [];

  constructor(
    private readonly fetcher: (seq: number) => Promise<T>,
    private readonly onApply: (value: T, seq: number) => void,
    private readonly onError: (err: unknown) => void = () => {},
  ) {}

  get lastAppliedSeq(): number {
    return this.appliedSeq;
  }

  /** Full application log, in apply order (for stale-response auditing). */
  get history(): readonly Applied<T>[] {
    return this.applied;
  }

  request(): number {
    const seq = this.nextSeq++;
    this.fetcher(seq).then(
      (value) => {
        if (seq <= this.appliedSeq) return; // stale: a newer frame is up
        this.appliedSeq = seq;
        this.applied.push({ seq, value });
        this.onApply(value, seq);
      },
      (err) => {
        if (seq > this.appliedSeq) this.onError(err);
      },
    );
    return seq;
  }
}

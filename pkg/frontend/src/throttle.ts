/**
 * Trailing-edge throttle: emit at most once per interval, and always emit
 * the most recent value eventually (last position wins on a drag).
 */
export class TrailingThrottle<T> {
  private lastSent = -Infinity;
  private pending: T | undefined;
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly emit: (value: T) => void,
    private readonly intervalMs: number,
  ) {}

  push(value: T): void {
    const now = Date.now();
    if (now - this.lastSent >= this.intervalMs && this.timer === null) {
      this.lastSent = now;
      this.emit(value);
      return;
    }
    this.pending = value;
    if (this.timer === null) {
      const wait = Math.max(0, this.lastSent + this.intervalMs - now);
      this.timer = setTimeout(() => {
        this.timer = null;
        this.lastSent = Date.now();
        const v = this.pending as T;
        this.pending = undefined;
        this.emit(v);
      }, wait);
    }
  }

  /** Drop any scheduled trailing emit (used on disconnect). */
  cancel(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.pending = undefined;
  }
}

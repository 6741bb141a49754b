/** Debounced async runner with latest-wins semantics: at most one
 * in-flight request matters, stale results are dropped. */

export interface LatestWins<A> {
  schedule(arg: A): void;
  /** Cancels any pending timer without running it. */
  cancel(): void;
}

export function latestWins<A, R>(
  run: (arg: A) => Promise<R>,
  delayMs: number,
  onResult: (result: R) => void,
  onError: (error: unknown) => void = () => undefined,
): LatestWins<A> {
  let timer: ReturnType<typeof setTimeout> | null = null;
  let sequence = 0;

  return {
    schedule(arg: A): void {
      if (timer !== null) clearTimeout(timer);
      timer = setTimeout(() => {
        timer = null;
        sequence += 1;
        const mine = sequence;
        run(arg).then(
          (result) => {
            if (mine === sequence) onResult(result);
          },
          (error) => {
            if (mine === sequence) onError(error);
          },
        );
      }, delayMs);
    },
    cancel(): void {
      if (timer !== null) clearTimeout(timer);
      timer = null;
    },
  };
}

/** Session-lifetime fetch de-duplication.
 *
 * The cache stores the promise, not the value, and stores it before
 * the fetch resolves: concurrent callers of the same key share one
 * request, and a key once requested is never requested again for the
 * lifetime of the cache. Nothing is ever evicted.
 */

export class FetchCache {
  private readonly entries = new Map<string, Promise<unknown>>();

  get<T>(key: string, fetcher: () => Promise<T>): Promise<T> {
    const hit = this.entries.get(key);
    if (hit !== undefined) {
      return hit as Promise<T>;
    }
    const pending = fetcher();
    this.entries.set(key, pending);
    return pending;
  }

  has(key: string): boolean {
    return this.entries.has(key);
  }

  get size(): number {
    return this.entries.size;
  }
}

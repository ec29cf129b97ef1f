/** Deterministic 64-bit generator for the bootstrap resampling stream.
 *
 * Mirrors the server's SplitMix64 (Steele, Lea & Flood 2014) so both
 * runtimes draw identical column resamples from the same seed. BigInt
 * keeps the 64-bit wraparound exact.
 */

const MASK = (1n << 64n) - 1n;
const GAMMA = 0x9e3779b97f4a7c15n;
const MIX1 = 0xbf58476d1ce4e5b9n;
const MIX2 = 0x94d049bb133111ebn;

export class SplitMix64 {
  private state: bigint;

  constructor(seed: number | bigint) {
    this.state = BigInt(seed) & MASK;
  }

  nextU64(): bigint {
    this.state = (this.state + GAMMA) & MASK;
    let z = this.state;
    z = ((z ^ (z >> 30n)) * MIX1) & MASK;
    z = ((z ^ (z >> 27n)) * MIX2) & MASK;
    return (z ^ (z >> 31n)) & MASK;
  }

  /** Draw in [0, n) by single modulo; bias is negligible for the small
   * n used here and the reduction must match the server exactly. */
  nextBelow(n: number): number {
    if (n <= 0) {
      throw new RangeError("n must be positive");
    }
    return Number(this.nextU64() % BigInt(n));
  }
}

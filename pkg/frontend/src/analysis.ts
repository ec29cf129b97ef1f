/** Difficulty quintiles, similarity, and comparison regions, matching
 * the server's analytics exactly so locally recomputed views agree
 * with precomputed ones.
 */

export class AnalysisError extends Error {}

export const DIFFICULTY_LABELS = [
  "very_hard",
  "hard",
  "medium",
  "easy",
  "very_easy",
] as const;
export type DifficultyLabel = (typeof DIFFICULTY_LABELS)[number];

export const REGIONS = [
  "alg1_wins",
  "alg2_wins",
  "both_well",
  "both_poorly",
  "both_moderate",
] as const;
export type Region = (typeof REGIONS)[number];

const VARIANCE_FLOOR = 1e-9;

/** Linear-interpolation percentile on the ascending sort, 0 < p < 100:
 * h = (p/100)(n-1) + 1, result = s_(k) + (s_(k+1) - s_(k)) * (h - k). */
export function percentile(values: number[], p: number): number {
  if (values.length === 0) {
    throw new AnalysisError("percentile of an empty multiset");
  }
  if (!(p > 0 && p < 100)) {
    throw new AnalysisError(`p must lie in (0, 100), got ${p}`);
  }
  const s = values.slice().sort((a, b) => a - b);
  const n = s.length;
  const h = (p / 100) * (n - 1) + 1;
  const k = Math.floor(h);
  const f = h - k;
  if (k >= n) {
    return s[n - 1];
  }
  if (f === 0) {
    return s[k - 1];
  }
  return s[k - 1] + (s[k] - s[k - 1]) * f;
}

export interface QuintileBoundaries {
  q20: number;
  q40: number;
  q60: number;
  q80: number;
}

export function quintileBoundaries(values: number[]): QuintileBoundaries {
  return {
    q20: percentile(values, 20),
    q40: percentile(values, 40),
    q60: percentile(values, 60),
    q80: percentile(values, 80),
  };
}

/** Group index 1..5 with inclusive upper bounds. */
export function classifyQuintile(value: number, b: QuintileBoundaries): number {
  if (value <= b.q20) return 1;
  if (value <= b.q40) return 2;
  if (value <= b.q60) return 3;
  if (value <= b.q80) return 4;
  return 5;
}

export interface PlanePoint {
  x: number;
  y: number;
}

/** (normX + normY) / 2 per point with min-max normalized coordinates;
 * a collapsed axis contributes 0.5 for every point. Results align with
 * the input by index. */
export function difficultyScores(points: PlanePoint[]): number[] {
  if (points.length < 2) {
    throw new AnalysisError("difficulty needs >= 2 points");
  }
  const xs = points.map((p) => p.x);
  const ys = points.map((p) => p.y);
  const minX = Math.min(...xs);
  const maxX = Math.max(...xs);
  const minY = Math.min(...ys);
  const maxY = Math.max(...ys);
  const norm = (v: number, lo: number, hi: number) =>
    hi === lo ? 0.5 : (v - lo) / (hi - lo);
  return points.map(
    (p) => (norm(p.x, minX, maxX) + norm(p.y, minY, maxY)) / 2,
  );
}

export function difficultyLabels(scores: number[]): DifficultyLabel[] {
  if (scores.length === 0) {
    return [];
  }
  const bounds = quintileBoundaries(scores);
  return scores.map(
    (s) => DIFFICULTY_LABELS[classifyQuintile(s, bounds) - 1],
  );
}

export interface UncertainPoint extends PlanePoint {
  varX: number;
  varY: number;
}

export function vnDistance(a: UncertainPoint, b: UncertainPoint): number {
  const dx2 = (b.x - a.x) ** 2;
  const dy2 = (b.y - a.y) ** 2;
  return Math.sqrt(
    dx2 / Math.max(a.varX + b.varX, VARIANCE_FLOOR) +
      dy2 / Math.max(a.varY + b.varY, VARIANCE_FLOOR),
  );
}

export interface SimilarityScore {
  distance: number;
  confidence: number;
  dissimilarity: number;
}

export function similarity(
  a: UncertainPoint,
  b: UncertainPoint,
): SimilarityScore {
  const distance = vnDistance(a, b);
  const confidence = Math.exp(-distance);
  return { distance, confidence, dissimilarity: 1 - confidence };
}

/** Locate an (alg1 score, alg2 score) pair; the first inequality that
 * holds wins, so the corner triangles claim their boundary lines. */
export function classifyRegion(x: number, y: number): Region {
  if (!(x >= 0 && x <= 1 && y >= 0 && y <= 1)) {
    throw new AnalysisError(`(${x}, ${y}) outside the unit square`);
  }
  if (y - x >= 0.5) return "alg2_wins";
  if (x - y >= 0.5) return "alg1_wins";
  if (x + y >= 1.5) return "both_well";
  if (x + y <= 0.5) return "both_poorly";
  return "both_moderate";
}

export interface NamedUncertainPoint extends UncertainPoint {
  dataset: string;
}

/** Every other point ranked by confidence against the target, most
 * similar first; ties fall back to ascending dataset name. */
export function rankBySimilarity(
  points: NamedUncertainPoint[],
  target: string,
): Array<{ dataset: string; score: SimilarityScore }> {
  const anchor = points.find((p) => p.dataset === target);
  if (!anchor) {
    throw new AnalysisError(`${target} is not among the points`);
  }
  return points
    .filter((p) => p.dataset !== target)
    .map((p) => ({ dataset: p.dataset, score: similarity(anchor, p) }))
    .sort(
      (a, b) =>
        b.score.confidence - a.score.confidence ||
        (a.dataset < b.dataset ? -1 : a.dataset > b.dataset ? 1 : 0),
    );
}

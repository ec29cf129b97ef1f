/** Client-side two-component projection of a score matrix.
 *
 * Reimplements the server's contract so filtered views never need a
 * server round trip: columns are mean-centered without scaling, the
 * components are the top-2 eigenvectors of the sample covariance
 * (divisor n - 1), and component signs follow the deterministic rule
 * (negate when the loadings sum is negative; on an exact zero sum,
 * negate when the first nonzero loading is negative). Position
 * variance comes from the same seeded SplitMix64 column bootstrap, so
 * an unfiltered client fit reproduces the server's stored points.
 */

import { symmetricEigen } from "./linalg.js";
import { SplitMix64 } from "./rng.js";

export class PcaError extends Error {}

export interface PcaModel {
  means: number[];
  /** [pc1, pc2], each one loading per column. */
  components: [number[], number[]];
  explainedVariance: [number, number];
  explainedRatio: [number, number];
}

export interface ProjectedPoint {
  dataset: string;
  x: number;
  y: number;
  varX: number;
  varY: number;
}

function orient(component: number[]): number[] {
  let total = 0;
  for (const loading of component) {
    total += loading;
  }
  if (total < 0) {
    return component.map((c) => -c);
  }
  if (total === 0) {
    for (const loading of component) {
      if (loading !== 0) {
        return loading < 0 ? component.map((c) => -c) : component;
      }
    }
  }
  return component;
}

function columnMeans(values: number[][]): number[] {
  const nRows = values.length;
  const nCols = values[0].length;
  const means = new Array<number>(nCols).fill(0);
  for (const row of values) {
    for (let j = 0; j < nCols; j++) {
      means[j] += row[j];
    }
  }
  return means.map((total) => total / nRows);
}

interface Top2 {
  means: number[];
  comps: [number[], number[]];
  top: [number, number];
  totalVariance: number;
}

function top2Components(values: number[][]): Top2 {
  const nRows = values.length;
  const nCols = values[0].length;
  const means = columnMeans(values);
  const centered = values.map((row) => row.map((v, j) => v - means[j]));

  const cov: number[][] = [];
  for (let i = 0; i < nCols; i++) {
    cov.push(new Array<number>(nCols).fill(0));
  }
  for (const row of centered) {
    for (let i = 0; i < nCols; i++) {
      for (let j = i; j < nCols; j++) {
        cov[i][j] += row[i] * row[j];
      }
    }
  }
  for (let i = 0; i < nCols; i++) {
    for (let j = i; j < nCols; j++) {
      cov[i][j] /= nRows - 1;
      cov[j][i] = cov[i][j];
    }
  }

  const { values: eigenvalues, vectors } = symmetricEigen(cov);
  const order = eigenvalues
    .map((_, i) => i)
    .sort((a, b) => eigenvalues[b] - eigenvalues[a]);
  const comps: [number[], number[]] = [
    orient(vectors[order[0]]),
    orient(vectors[order[1]]),
  ];
  const top: [number, number] = [
    eigenvalues[order[0]],
    eigenvalues[order[1]],
  ];
  let totalVariance = 0;
  for (const ev of eigenvalues) {
    totalVariance += ev;
  }
  return { means, comps, top, totalVariance };
}

export function fitModel(values: number[][]): PcaModel {
  const nRows = values.length;
  const nCols = nRows > 0 ? values[0].length : 0;
  if (nRows < 3) {
    throw new PcaError(`need >= 3 datasets, got ${nRows}`);
  }
  if (nCols < 2) {
    throw new PcaError(`need >= 2 algorithms, got ${nCols}`);
  }
  const { means, comps, top, totalVariance } = top2Components(values);
  if (totalVariance === 0) {
    throw new PcaError("all datasets have identical scores");
  }
  const ev: [number, number] = [Math.max(top[0], 0), Math.max(top[1], 0)];
  return {
    means,
    components: comps,
    explainedVariance: ev,
    explainedRatio: [ev[0] / totalVariance, ev[1] / totalVariance],
  };
}

export function projectRow(model: PcaModel, row: number[]): [number, number] {
  if (row.length !== model.means.length) {
    throw new PcaError(
      `row has ${row.length} entries, model expects ${model.means.length}`,
    );
  }
  let x = 0;
  let y = 0;
  for (let j = 0; j < row.length; j++) {
    const centered = row[j] - model.means[j];
    x += centered * model.components[0][j];
    y += centered * model.components[1][j];
  }
  return [x, y];
}

function sampleVariance(samples: number[]): number {
  const n = samples.length;
  let mean = 0;
  for (const s of samples) {
    mean += s;
  }
  mean /= n;
  let sumSq = 0;
  for (const s of samples) {
    const d = s - mean;
    sumSq += d * d;
  }
  return sumSq / (n - 1);
}

/** Per-row [varX, varY] from the seeded column bootstrap: every
 * replicate resamples columns with replacement, refits, sign-aligns
 * its components against the reference model restricted to the drawn
 * columns, and projects; variances use divisor B - 1. */
export function bootstrapVariances(
  values: number[][],
  model: PcaModel,
  bootstrapCount: number,
  seed: number,
): Array<[number, number]> {
  const nRows = values.length;
  const nCols = values[0].length;
  if (nCols < 2) {
    throw new PcaError("column bootstrap needs >= 2 columns");
  }
  if (bootstrapCount < 2) {
    throw new PcaError("bootstrapCount must be >= 2");
  }

  const rng = new SplitMix64(seed);
  const xs: number[][] = Array.from({ length: nRows }, () => []);
  const ys: number[][] = Array.from({ length: nRows }, () => []);
  for (let b = 0; b < bootstrapCount; b++) {
    const idx = Array.from({ length: nCols }, () => rng.nextBelow(nCols));
    const resampled = values.map((row) => idx.map((j) => row[j]));
    const { means, comps } = top2Components(resampled);
    for (let axis = 0; axis < 2; axis++) {
      let dot = 0;
      for (let j = 0; j < nCols; j++) {
        dot += comps[axis][j] * model.components[axis][idx[j]];
      }
      if (dot < 0) {
        comps[axis] = comps[axis].map((c) => -c);
      }
    }
    for (let r = 0; r < nRows; r++) {
      let px = 0;
      let py = 0;
      for (let j = 0; j < nCols; j++) {
        const centered = resampled[r][j] - means[j];
        px += centered * comps[0][j];
        py += centered * comps[1][j];
      }
      xs[r].push(px);
      ys[r].push(py);
    }
  }
  return xs.map((row, r) => [sampleVariance(row), sampleVariance(ys[r])]);
}

/** Fit, project every row, and attach bootstrap variances; rows and
 * names are index-aligned. */
export function computePoints(
  datasets: string[],
  values: number[][],
  bootstrapCount: number,
  seed: number,
): { model: PcaModel; points: ProjectedPoint[] } {
  const model = fitModel(values);
  const variances = bootstrapVariances(values, model, bootstrapCount, seed);
  const points = values.map((row, i) => {
    const [x, y] = projectRow(model, row);
    return {
      dataset: datasets[i],
      x,
      y,
      varX: variances[i][0],
      varY: variances[i][1],
    };
  });
  return { model, points };
}

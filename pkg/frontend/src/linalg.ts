/** Dense symmetric eigendecomposition by cyclic Jacobi rotations.
 *
 * The matrices here are covariance matrices of at most a few dozen
 * algorithm columns, where Jacobi converges to machine precision in a
 * handful of sweeps. Returned eigenpairs are unordered; callers sort.
 */

export interface EigenResult {
  /** Eigenvalues, aligned with vectors by index. */
  values: number[];
  /** vectors[i] is the unit eigenvector for values[i]. */
  vectors: number[][];
}

function offDiagonalNormSq(a: number[][]): number {
  let sum = 0;
  for (let p = 0; p < a.length; p++) {
    for (let q = p + 1; q < a.length; q++) {
      sum += a[p][q] * a[p][q];
    }
  }
  return sum;
}

export function symmetricEigen(matrix: number[][]): EigenResult {
  const n = matrix.length;
  const a = matrix.map((row) => row.slice());
  const v: number[][] = [];
  for (let i = 0; i < n; i++) {
    v.push(Array.from({ length: n }, (_, j) => (i === j ? 1 : 0)));
  }
  if (n === 1) {
    return { values: [a[0][0]], vectors: [[1]] };
  }

  let scale = 0;
  for (let i = 0; i < n; i++) {
    for (let j = 0; j < n; j++) {
      scale = Math.max(scale, Math.abs(a[i][j]));
    }
  }
  const tolerance = Math.max(scale * 1e-15, Number.MIN_VALUE) ** 2;

  for (let sweep = 0; sweep < 100; sweep++) {
    if (offDiagonalNormSq(a) <= tolerance) {
      break;
    }
    for (let p = 0; p < n - 1; p++) {
      for (let q = p + 1; q < n; q++) {
        const apq = a[p][q];
        if (apq === 0) {
          continue;
        }
        const tau = (a[q][q] - a[p][p]) / (2 * apq);
        // tangent of the rotation zeroing a[p][q]; smaller root for stability
        const t =
          tau === 0
            ? 1
            : Math.sign(tau) / (Math.abs(tau) + Math.sqrt(1 + tau * tau));
        const c = 1 / Math.sqrt(1 + t * t);
        const s = t * c;

        const app = a[p][p];
        const aqq = a[q][q];
        a[p][p] = app - t * apq;
        a[q][q] = aqq + t * apq;
        a[p][q] = 0;
        a[q][p] = 0;
        for (let k = 0; k < n; k++) {
          if (k !== p && k !== q) {
            const akp = a[k][p];
            const akq = a[k][q];
            a[k][p] = c * akp - s * akq;
            a[p][k] = a[k][p];
            a[k][q] = s * akp + c * akq;
            a[q][k] = a[k][q];
          }
          const vkp = v[k][p];
          const vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }

  const values: number[] = [];
  const vectors: number[][] = [];
  for (let i = 0; i < n; i++) {
    values.push(a[i][i]);
    vectors.push(v.map((row) => row[i]));
  }
  return { values, vectors };
}

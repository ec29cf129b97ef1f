"""Two-component PCA over the score matrix plus bootstrap position
uncertainty.

Columns are mean-centered without variance scaling (every input is a
score in [0, 1], so the axes are already commensurate). Components are
the top-2 eigenvectors of the sample covariance (divisor n - 1) from a
dense symmetric eigensolve, which is plenty for the few dozen columns
this system sees. Component signs follow a deterministic rule so
repeated fits are bit-identical: a component whose loadings sum to a
negative value is negated, and a zero-sum component is negated iff its
first nonzero loading is negative.

Positional uncertainty (the plot ellipses) is a column bootstrap:
resample algorithm columns with replacement (one resample shared by all
datasets per replicate), refit, sign-align each replicate's components
to the reference fit, project, and take per-dataset sample variances of
the replicate coordinates. The resampling stream is SplitMix64, so any
runtime that implements the same generator reproduces the exact
variances.
"""

from dataclasses import dataclass

import numpy as np

from .model import DatasetRef, PerformanceMatrix
from .rng import SplitMix64


class PcaError(ValueError):
    pass


class TooFewRows(PcaError):
    pass


class TooFewColumns(PcaError):
    pass


class DegenerateVariance(PcaError):
    pass


class DimensionMismatch(PcaError):
    pass


@dataclass(frozen=True)
class PcaModel:
    means: tuple
    components: np.ndarray  # shape (2, n_cols); rows are PC1, PC2
    explained_variance: tuple
    explained_ratio: tuple


@dataclass(frozen=True)
class ApsPoint:
    """One dataset's position in the two-component performance space,
    with per-axis positional variance."""

    dataset: DatasetRef
    x: float
    y: float
    var_x: float
    var_y: float

    def __post_init__(self):
        if self.var_x < 0 or self.var_y < 0:
            raise PcaError("positional variances must be >= 0")


def _orient(component: np.ndarray) -> np.ndarray:
    total = component.sum()
    if total < 0:
        return -component
    if total == 0:
        for loading in component:
            if loading != 0:
                return -component if loading < 0 else component
    return component


def _top2_components(values: np.ndarray):
    """Means, oriented top-2 eigenvectors, and their eigenvalues.

    Shared by fit() and the bootstrap loop; the bootstrap skips the
    validity checks and ratio bookkeeping that fit() layers on top.
    """
    means = values.mean(axis=0)
    centered = values - means
    cov = (centered.T @ centered) / (values.shape[0] - 1)
    eigenvalues, eigenvectors = np.linalg.eigh(cov)
    order = np.argsort(eigenvalues)[::-1]
    comps = np.vstack(
        [_orient(eigenvectors[:, order[0]]), _orient(eigenvectors[:, order[1]])]
    )
    top = (float(eigenvalues[order[0]]), float(eigenvalues[order[1]]))
    return means, comps, top, float(eigenvalues.sum())


def fit(matrix: PerformanceMatrix) -> PcaModel:
    n_rows, n_cols = matrix.shape
    if n_rows < 3:
        raise TooFewRows(f"need >= 3 datasets, got {n_rows}")
    if n_cols < 2:
        raise TooFewColumns(f"need >= 2 algorithms, got {n_cols}")

    means, comps, top, total_var = _top2_components(matrix.values)
    if total_var == 0.0:
        raise DegenerateVariance("all datasets have identical scores")

    # eigh can return tiny negative eigenvalues for rank-deficient input
    ev = (max(top[0], 0.0), max(top[1], 0.0))
    return PcaModel(
        means=tuple(float(m) for m in means),
        components=comps,
        explained_variance=ev,
        explained_ratio=(ev[0] / total_var, ev[1] / total_var),
    )


def project(model: PcaModel, row) -> tuple[float, float]:
    arr = np.asarray(row, dtype=float)
    if arr.shape != (len(model.means),):
        raise DimensionMismatch(
            f"row has {arr.shape} entries, model expects {len(model.means)}"
        )
    centered = arr - np.asarray(model.means)
    return (
        float(centered @ model.components[0]),
        float(centered @ model.components[1]),
    )


def estimate_position_variance(
    matrix: PerformanceMatrix,
    model: PcaModel,
    bootstrap_count: int,
    seed: int,
) -> list[tuple[float, float]]:
    """Per-dataset (var_x, var_y) from a seeded column bootstrap.

    Each replicate draws n_cols column indices with replacement, refits
    on the resampled matrix, flips any replicate component whose dot
    product with the reference component (restricted to the sampled
    columns) is negative, and projects every dataset. Variances use
    divisor B - 1.
    """
    n_rows, n_cols = matrix.shape
    if n_cols < 2:
        raise TooFewColumns("column bootstrap needs >= 2 columns")
    if bootstrap_count < 2:
        raise PcaError("bootstrap_count must be >= 2")

    rng = SplitMix64(seed)
    xs = np.empty((bootstrap_count, n_rows))
    ys = np.empty((bootstrap_count, n_rows))
    for b in range(bootstrap_count):
        idx = [rng.next_below(n_cols) for _ in range(n_cols)]
        resampled = matrix.values[:, idx]
        means, comps, _top, _tv = _top2_components(resampled)
        for axis in range(2):
            ref = model.components[axis][idx]
            if float(comps[axis] @ ref) < 0:
                comps[axis] = -comps[axis]
        centered = resampled - means
        xs[b] = centered @ comps[0]
        ys[b] = centered @ comps[1]

    var_x = xs.var(axis=0, ddof=1)
    var_y = ys.var(axis=0, ddof=1)
    return [(float(vx), float(vy)) for vx, vy in zip(var_x, var_y)]


def aps_with_model(
    matrix: PerformanceMatrix, bootstrap_count: int, seed: int
) -> tuple[PcaModel, list[ApsPoint]]:
    """fit + project + bootstrap variance, keeping the fitted model
    around for callers that also need explained ratios."""
    model = fit(matrix)
    variances = estimate_position_variance(matrix, model, bootstrap_count, seed)
    points = []
    for ds, row, (vx, vy) in zip(matrix.datasets, matrix.values, variances):
        x, y = project(model, row)
        points.append(ApsPoint(dataset=ds, x=x, y=y, var_x=vx, var_y=vy))
    return model, points


def compute_aps_points(
    matrix: PerformanceMatrix, bootstrap_count: int, seed: int
) -> list[ApsPoint]:
    """Dataset positions with bootstrap variances, in matrix row order."""
    return aps_with_model(matrix, bootstrap_count, seed)[1]

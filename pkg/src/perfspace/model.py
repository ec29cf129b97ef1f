"""Core domain types: metric identifiers, catalog references, scores,
and the dataset-by-algorithm score matrix that downstream analysis
consumes.

Scores live on an absolute [0, 1] scale. A matrix is always rectangular:
assembly drops algorithm columns with missing cells instead of imputing,
because an imputed score would be a fabricated measurement.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class MetricKind(str, Enum):
    NDCG = "ndcg"
    HIT_RATIO = "hit_ratio"
    RECALL = "recall"


# Cutoff depths the system evaluates and serves.
K_VALUES = (1, 3, 5, 10, 20)


class ModelError(ValueError):
    """Base class for domain-model violations."""


class ScoreOutOfRange(ModelError):
    pass


class InvalidK(ModelError):
    pass


class EmptySelection(ModelError):
    pass


class NoCompleteColumns(ModelError):
    pass


@dataclass(frozen=True, order=True)
class AlgorithmRef:
    id: int
    name: str

    def __post_init__(self):
        if not self.name:
            raise ModelError("algorithm name must be non-empty")


@dataclass(frozen=True, order=True)
class DatasetRef:
    id: int
    name: str

    def __post_init__(self):
        if not self.name:
            raise ModelError("dataset name must be non-empty")


@dataclass(frozen=True)
class PerformanceRecord:
    """One measured score for an (algorithm, dataset) pair at a cutoff."""

    dataset: DatasetRef
    algorithm: AlgorithmRef
    metric: MetricKind
    k: int
    score: float

    def __post_init__(self):
        if self.k not in K_VALUES:
            raise InvalidK(f"k must be one of {K_VALUES}, got {self.k}")
        if not (0.0 <= self.score <= 1.0):
            raise ScoreOutOfRange(
                f"score {self.score!r} outside [0, 1] for "
                f"{self.dataset.name}/{self.algorithm.name}"
            )


def _name_key(ref) -> tuple[str, str]:
    # case-insensitive, with the raw name as tie-break so ordering stays
    # total when two names differ only by case
    return (ref.name.lower(), ref.name)


@dataclass(frozen=True)
class PerformanceMatrix:
    """Rectangular dataset-by-algorithm score grid for one (metric, k).

    Rows and columns are sorted ascending by case-insensitive name, so
    two assemblies from the same records are identical cell for cell.
    """

    metric: MetricKind
    k: int
    datasets: tuple[DatasetRef, ...]
    algorithms: tuple[AlgorithmRef, ...]
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        expected = (len(self.datasets), len(self.algorithms))
        if self.values.shape != expected:
            raise ModelError(
                f"matrix shape {self.values.shape} != {expected}"
            )
        if self.values.size and (
            self.values.min() < 0.0 or self.values.max() > 1.0
        ):
            raise ScoreOutOfRange("matrix cells must lie in [0, 1]")

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape


def assemble_matrix(
    records,
    metric: MetricKind,
    k: int,
    datasets,
    algorithms,
) -> PerformanceMatrix:
    """Build the score matrix for one (metric, k) slice.

    Every selected dataset becomes a row. An algorithm becomes a column
    only if it has a score for every selected dataset; partial columns
    are dropped. Raises EmptySelection for an empty dataset or algorithm
    selection and NoCompleteColumns when no column survives the drop.
    """
    if not datasets or not algorithms:
        raise EmptySelection("need at least one dataset and one algorithm")
    if k not in K_VALUES:
        raise InvalidK(f"k must be one of {K_VALUES}, got {k}")

    rows = sorted(datasets, key=_name_key)
    cells: dict[tuple[int, int], float] = {}
    for rec in records:
        if rec.metric == metric and rec.k == k:
            cells[(rec.dataset.id, rec.algorithm.id)] = rec.score

    cols = [
        alg
        for alg in sorted(algorithms, key=_name_key)
        if all((ds.id, alg.id) in cells for ds in rows)
    ]
    if not cols:
        raise NoCompleteColumns(
            f"no algorithm has a complete {metric.value}@{k} column "
            f"for the selected datasets"
        )

    values = np.array(
        [[cells[(ds.id, alg.id)] for alg in cols] for ds in rows],
        dtype=float,
    )
    return PerformanceMatrix(
        metric=metric,
        k=k,
        datasets=tuple(rows),
        algorithms=tuple(cols),
        values=values,
    )

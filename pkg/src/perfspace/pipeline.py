"""Glue between storage and the projection math: build matrices from
stored scores and precompute projection sets, shared by the CLI and the
admin API so both paths store identical results.
"""

from dataclasses import dataclass

from . import model, pca
from .config import Config
from .model import K_VALUES, MetricKind, PerformanceMatrix, assemble_matrix
from .storage import Store


class InsufficientData(Exception):
    """The stored slice cannot support a projection."""


def matrix_from_store(store: Store, metric: MetricKind, k: int) -> PerformanceMatrix:
    """Assemble the full-selection matrix for one (metric, k) slice.

    The selection is every dataset and algorithm with at least one
    score in the slice; incomplete algorithm columns drop per the
    assembly rule. Raises InsufficientData when the slice cannot yield
    a fittable matrix.
    """
    records = store.query_performance([], [], metric, k)
    if not records:
        raise InsufficientData(f"no scores stored for {MetricKind(metric).value}@{k}")
    datasets = sorted({r.dataset for r in records}, key=lambda d: d.id)
    algorithms = sorted({r.algorithm for r in records}, key=lambda a: a.id)
    try:
        return assemble_matrix(records, MetricKind(metric), k, datasets, algorithms)
    except (model.EmptySelection, model.NoCompleteColumns) as exc:
        raise InsufficientData(str(exc)) from exc


@dataclass(frozen=True)
class PrecomputeSummary:
    metric: MetricKind
    k: int
    ok: bool
    n_points: int = 0
    explained_ratio: tuple[float, float] | None = None
    reason: str | None = None


def precompute_combo(
    store: Store, config: Config, metric: MetricKind, k: int
) -> PrecomputeSummary:
    """Fit, project, bootstrap, and store one (metric, k) combination."""
    metric = MetricKind(metric)
    try:
        matrix = matrix_from_store(store, metric, k)
        pca_model, points = pca.aps_with_model(
            matrix, config.bootstrap_count, config.seed
        )
    except (InsufficientData, pca.PcaError) as exc:
        return PrecomputeSummary(metric=metric, k=k, ok=False, reason=str(exc))
    store.store_pca(
        metric,
        k,
        points,
        pca_model.explained_ratio,
        config.seed,
        config.bootstrap_count,
    )
    return PrecomputeSummary(
        metric=metric,
        k=k,
        ok=True,
        n_points=len(points),
        explained_ratio=pca_model.explained_ratio,
    )


def precompute_pca(
    store: Store,
    config: Config,
    metric: MetricKind | None = None,
    k: int | None = None,
) -> list[PrecomputeSummary]:
    """Precompute one combination, one metric's five, or all fifteen.

    A combination without enough data is reported, not fatal; callers
    decide whether any failure matters.
    """
    metrics = [MetricKind(metric)] if metric is not None else list(MetricKind)
    ks = [k] if k is not None else list(K_VALUES)
    return [
        precompute_combo(store, config, m, kv) for m in metrics for kv in ks
    ]

from pathlib import Path

import numpy as np
import pytest

from perfspace.metadata import load_appendix_corpus
from perfspace.model import (
    AlgorithmRef,
    DatasetRef,
    MetricKind,
    PerformanceRecord,
    assemble_matrix,
)
from perfspace.storage import Store

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
CORPUS_PATH = str(DATA_DIR / "dataset_metadata.csv")
ALGORITHMS_PATH = str(DATA_DIR / "algorithms.txt")


def make_matrix(values, metric=MetricKind.NDCG, k=10):
    """Wrap a 2-D array in a PerformanceMatrix with generated names."""
    values = np.asarray(values, dtype=float)
    n_rows, n_cols = values.shape
    datasets = [DatasetRef(i, f"ds{i:02d}") for i in range(n_rows)]
    algorithms = [AlgorithmRef(j, f"alg{j:02d}") for j in range(n_cols)]
    records = [
        PerformanceRecord(
            dataset=datasets[i],
            algorithm=algorithms[j],
            metric=metric,
            k=k,
            score=float(values[i, j]),
        )
        for i in range(n_rows)
        for j in range(n_cols)
    ]
    return assemble_matrix(records, metric, k, datasets, algorithms)


@pytest.fixture
def corpus():
    return load_appendix_corpus(CORPUS_PATH)


@pytest.fixture
def algorithm_names():
    with open(ALGORITHMS_PATH, encoding="utf-8") as fh:
        return [line.strip() for line in fh if line.strip()]


@pytest.fixture
def store(tmp_path):
    s = Store(str(tmp_path / "test.db"))
    yield s
    s.close()

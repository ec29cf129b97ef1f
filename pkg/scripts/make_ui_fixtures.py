"""Regenerate the cross-component conformance fixtures in frontend/fixtures/.

Three artifacts pin the contracts the browser client must reproduce:

  pca_conformance.json   a 6x4 score matrix with the fitted model and
                         bootstrapped points (B=200, seed=42); the client
                         projection must match these numbers to 1e-6
  comparison_state.json  the inputs of one two-algorithm comparison view
  comparison_cli.csv     the CLI export for exactly that state; the
                         client CSV builder must reproduce it byte for byte

Both test suites consume these files, so regenerating them after an
intentional contract change keeps the suites in agreement.

Usage: python3 scripts/make_ui_fixtures.py
"""

import json
import sys
import tempfile
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from perfspace import cli
from perfspace.config import DEFAULT_BOOTSTRAP, DEFAULT_SEED
from perfspace.metadata import DatasetMeta
from perfspace.model import (
    AlgorithmRef,
    DatasetRef,
    MetricKind,
    PerformanceRecord,
    assemble_matrix,
)
from perfspace.pca import aps_with_model
from perfspace.storage import Store

FIXTURES = ROOT / "frontend" / "fixtures"

COMPARISON_ROWS = [
    # one dataset per region, plus floats that exercise CSV rendering
    ("Alpha", 0.9, 0.9),
    ("beta", 0.1, 0.72),
    ("delta", 0.2, 0.15),
    ("Epsilon", 0.5, 0.55),
    ("Gamma", 0.75, 0.2),
    ("zeta", 1e-05, 1.0),
]
COMPARISON_METRIC = MetricKind.NDCG
COMPARISON_K = 5
ALG1, ALG2 = "BPR", "CDAE"


def pca_fixture() -> dict:
    values = np.round(np.random.default_rng(12345).uniform(size=(6, 4)), 6)
    datasets = [DatasetRef(i, f"ds{i:02d}") for i in range(6)]
    algorithms = [AlgorithmRef(j, f"alg{j:02d}") for j in range(4)]
    records = [
        PerformanceRecord(
            dataset=datasets[i],
            algorithm=algorithms[j],
            metric=MetricKind.NDCG,
            k=10,
            score=float(values[i, j]),
        )
        for i in range(6)
        for j in range(4)
    ]
    matrix = assemble_matrix(records, MetricKind.NDCG, 10, datasets, algorithms)
    model, points = aps_with_model(matrix, DEFAULT_BOOTSTRAP, DEFAULT_SEED)
    return {
        "bootstrap": DEFAULT_BOOTSTRAP,
        "seed": DEFAULT_SEED,
        "datasets": [d.name for d in datasets],
        "algorithms": [a.name for a in algorithms],
        "matrix": values.tolist(),
        "means": list(model.means),
        "components": model.components.tolist(),
        "explainedVariance": list(model.explained_variance),
        "explainedRatio": list(model.explained_ratio),
        "points": [
            {
                "dataset": p.dataset.name,
                "x": p.x,
                "y": p.y,
                "varX": p.var_x,
                "varY": p.var_y,
            }
            for p in points
        ],
    }


def trivial_meta(name: str) -> DatasetMeta:
    return DatasetMeta(
        name=name,
        num_users=10,
        num_items=10,
        num_interactions=50,
        user_item_ratio=1.0,
        density=0.5,
        mean_per_user=5.0,
        mean_per_item=5.0,
    )


def comparison_csv_via_cli() -> str:
    """Seed a throwaway store with the fixture state and capture the
    byte output of the comparison export command."""
    with tempfile.TemporaryDirectory() as tmp:
        db = str(Path(tmp) / "fixture.db")
        out = Path(tmp) / "comparison.csv"
        with Store(db) as store:
            store.upsert_catalog(
                [ALG1, ALG2], [trivial_meta(name) for name, _s1, _s2 in COMPARISON_ROWS]
            )
            records = []
            for name, s1, s2 in COMPARISON_ROWS:
                ds = store.dataset_by_name(name)
                for alg_name, score in ((ALG1, s1), (ALG2, s2)):
                    records.append(
                        PerformanceRecord(
                            dataset=ds,
                            algorithm=store.algorithm_by_name(alg_name),
                            metric=COMPARISON_METRIC,
                            k=COMPARISON_K,
                            score=score,
                        )
                    )
            store.insert_performance(records)
        code = cli.main(
            [
                "--db",
                db,
                "export",
                "comparison",
                "--metric",
                COMPARISON_METRIC.value,
                "--k",
                str(COMPARISON_K),
                "--alg1",
                ALG1,
                "--alg2",
                ALG2,
                "--out",
                str(out),
            ]
        )
        if code != 0:
            raise SystemExit("comparison export failed")
        return out.read_text(encoding="utf-8")


def main() -> int:
    FIXTURES.mkdir(parents=True, exist_ok=True)

    (FIXTURES / "pca_conformance.json").write_text(
        json.dumps(pca_fixture(), indent=1) + "\n", encoding="utf-8"
    )
    state = {
        "metric": COMPARISON_METRIC.value,
        "k": COMPARISON_K,
        "alg1": ALG1,
        "alg2": ALG2,
        "rows": [
            {"dataset": name, "score1": s1, "score2": s2}
            for name, s1, s2 in COMPARISON_ROWS
        ],
    }
    (FIXTURES / "comparison_state.json").write_text(
        json.dumps(state, indent=1) + "\n", encoding="utf-8"
    )
    (FIXTURES / "comparison_cli.csv").write_text(
        comparison_csv_via_cli(), encoding="utf-8", newline=""
    )
    for name in ("pca_conformance.json", "comparison_state.json", "comparison_cli.csv"):
        print(f"wrote {FIXTURES / name}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

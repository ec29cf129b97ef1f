"""SQLite-backed persistence: algorithm and dataset catalogs, the
performance score table, and precomputed projection results.

Four tables, nothing else. The store is desk-scale (tens of thousands
of score rows), so a single serialized connection behind a lock is both
simple and fast enough; readers never observe a half-written projection
set because replacement happens in one transaction.

Surrogate ids are stable across catalog upserts: re-seeding the same
names updates metadata in place and never renumbers.
"""

import sqlite3
import threading
from dataclasses import dataclass
from datetime import datetime, timezone

from .metadata import DatasetMeta, Feedback
from .model import (
    AlgorithmRef,
    DatasetRef,
    K_VALUES,
    MetricKind,
    PerformanceRecord,
)
from .pca import ApsPoint


class StorageError(Exception):
    pass


class ConstraintViolation(StorageError):
    pass


class UnknownReference(StorageError):
    pass


class InvalidIdType(StorageError):
    pass


class NotComputed(StorageError):
    pass


_SCHEMA = """
CREATE TABLE IF NOT EXISTS algorithms (
    id   INTEGER PRIMARY KEY,
    name TEXT NOT NULL UNIQUE
);
CREATE TABLE IF NOT EXISTS datasets (
    id               INTEGER PRIMARY KEY,
    name             TEXT NOT NULL UNIQUE,
    num_users        INTEGER NOT NULL,
    num_items        INTEGER NOT NULL,
    num_interactions INTEGER NOT NULL,
    user_item_ratio  REAL NOT NULL,
    density          REAL NOT NULL,
    mean_per_user    REAL NOT NULL,
    mean_per_item    REAL NOT NULL,
    max_per_user     INTEGER,
    min_per_user     INTEGER,
    max_per_item     INTEGER,
    min_per_item     INTEGER,
    feedback         TEXT
);
CREATE TABLE IF NOT EXISTS performance_results (
    dataset_id   INTEGER NOT NULL REFERENCES datasets(id),
    algorithm_id INTEGER NOT NULL REFERENCES algorithms(id),
    metric       TEXT NOT NULL,
    k            INTEGER NOT NULL,
    score        REAL NOT NULL,
    PRIMARY KEY (dataset_id, algorithm_id, metric, k)
);
CREATE TABLE IF NOT EXISTS pca_results (
    metric            TEXT NOT NULL,
    k                 INTEGER NOT NULL,
    dataset_id        INTEGER NOT NULL REFERENCES datasets(id),
    x                 REAL NOT NULL,
    y                 REAL NOT NULL,
    var_x             REAL NOT NULL,
    var_y             REAL NOT NULL,
    explained_ratio_1 REAL NOT NULL,
    explained_ratio_2 REAL NOT NULL,
    seed              INTEGER NOT NULL,
    bootstrap_count   INTEGER NOT NULL,
    computed_at       TEXT NOT NULL,
    PRIMARY KEY (metric, k, dataset_id)
);
"""


@dataclass(frozen=True)
class PcaResultRow:
    """One dataset's stored projection for a (metric, k) pair, with the
    provenance needed to reproduce it."""

    metric: MetricKind
    k: int
    dataset: DatasetRef
    x: float
    y: float
    var_x: float
    var_y: float
    explained_ratio_1: float
    explained_ratio_2: float
    seed: int
    bootstrap_count: int
    computed_at: str


def _check_ids(ids, param: str) -> list:
    out = []
    for value in ids:
        # bool is an int subclass; reject it explicitly
        if type(value) is not int:
            raise InvalidIdType(f"{param} must contain integers, got {value!r}")
        out.append(value)
    return out


class Store:
    """All access goes through one locked connection; every public
    method is safe to call from any thread."""

    def __init__(self, path: str):
        self.path = path
        self._lock = threading.RLock()
        self._conn = sqlite3.connect(path, check_same_thread=False)
        self._conn.execute("PRAGMA foreign_keys = ON")
        with self._lock, self._conn:
            self._conn.executescript(_SCHEMA)

    def close(self):
        with self._lock:
            self._conn.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    # -- catalog -----------------------------------------------------

    def upsert_catalog(self, algorithm_names, dataset_metas) -> tuple[int, int]:
        """Insert-or-update algorithms by name and datasets by name.
        Returns (algorithms upserted, datasets upserted)."""
        algorithm_names = list(algorithm_names)
        dataset_metas = list(dataset_metas)
        if len(set(algorithm_names)) != len(algorithm_names):
            raise ConstraintViolation("duplicate algorithm names in batch")
        ds_names = [m.name for m in dataset_metas]
        if len(set(ds_names)) != len(ds_names):
            raise ConstraintViolation("duplicate dataset names in batch")

        with self._lock, self._conn:
            for name in algorithm_names:
                self._conn.execute(
                    "INSERT INTO algorithms(name) VALUES (?) "
                    "ON CONFLICT(name) DO NOTHING",
                    (name,),
                )
            for m in dataset_metas:
                self._conn.execute(
                    """
                    INSERT INTO datasets(
                        name, num_users, num_items, num_interactions,
                        user_item_ratio, density, mean_per_user,
                        mean_per_item, max_per_user, min_per_user,
                        max_per_item, min_per_item, feedback
                    ) VALUES (?,?,?,?,?,?,?,?,?,?,?,?,?)
                    ON CONFLICT(name) DO UPDATE SET
                        num_users=excluded.num_users,
                        num_items=excluded.num_items,
                        num_interactions=excluded.num_interactions,
                        user_item_ratio=excluded.user_item_ratio,
                        density=excluded.density,
                        mean_per_user=excluded.mean_per_user,
                        mean_per_item=excluded.mean_per_item,
                        max_per_user=excluded.max_per_user,
                        min_per_user=excluded.min_per_user,
                        max_per_item=excluded.max_per_item,
                        min_per_item=excluded.min_per_item,
                        feedback=excluded.feedback
                    """,
                    (
                        m.name,
                        m.num_users,
                        m.num_items,
                        m.num_interactions,
                        m.user_item_ratio,
                        m.density,
                        m.mean_per_user,
                        m.mean_per_item,
                        m.max_per_user,
                        m.min_per_user,
                        m.max_per_item,
                        m.min_per_item,
                        m.feedback.value if m.feedback else None,
                    ),
                )
        return (len(algorithm_names), len(dataset_metas))

    def list_algorithms(self) -> list[AlgorithmRef]:
        with self._lock:
            rows = self._conn.execute(
                "SELECT id, name FROM algorithms ORDER BY name COLLATE NOCASE, name"
            ).fetchall()
        return [AlgorithmRef(id=r[0], name=r[1]) for r in rows]

    def list_datasets(self) -> list[tuple[DatasetRef, DatasetMeta]]:
        with self._lock:
            rows = self._conn.execute(
                """
                SELECT id, name, num_users, num_items, num_interactions,
                       user_item_ratio, density, mean_per_user,
                       mean_per_item, max_per_user, min_per_user,
                       max_per_item, min_per_item, feedback
                FROM datasets ORDER BY name COLLATE NOCASE, name
                """
            ).fetchall()
        out = []
        for r in rows:
            meta = DatasetMeta(
                name=r[1],
                num_users=r[2],
                num_items=r[3],
                num_interactions=r[4],
                user_item_ratio=r[5],
                density=r[6],
                mean_per_user=r[7],
                mean_per_item=r[8],
                max_per_user=r[9],
                min_per_user=r[10],
                max_per_item=r[11],
                min_per_item=r[12],
                feedback=Feedback(r[13]) if r[13] else None,
            )
            out.append((DatasetRef(id=r[0], name=r[1]), meta))
        return out

    def algorithm_by_name(self, name: str) -> AlgorithmRef | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT id, name FROM algorithms WHERE name = ?", (name,)
            ).fetchone()
        return AlgorithmRef(id=row[0], name=row[1]) if row else None

    def dataset_by_name(self, name: str) -> DatasetRef | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT id, name FROM datasets WHERE name = ?", (name,)
            ).fetchone()
        return DatasetRef(id=row[0], name=row[1]) if row else None

    # -- performance ---------------------------------------------------

    def insert_performance(self, records) -> tuple[int, int]:
        """Upsert records keyed on (dataset, algorithm, metric, k).
        Returns (inserted, replaced)."""
        records = list(records)
        inserted = replaced = 0
        with self._lock, self._conn:
            known_ds = {
                r[0] for r in self._conn.execute("SELECT id FROM datasets")
            }
            known_alg = {
                r[0] for r in self._conn.execute("SELECT id FROM algorithms")
            }
            for rec in records:
                if rec.dataset.id not in known_ds:
                    raise UnknownReference(
                        f"dataset id {rec.dataset.id} ({rec.dataset.name!r}) "
                        f"is not in the catalog"
                    )
                if rec.algorithm.id not in known_alg:
                    raise UnknownReference(
                        f"algorithm id {rec.algorithm.id} "
                        f"({rec.algorithm.name!r}) is not in the catalog"
                    )
                key = (rec.dataset.id, rec.algorithm.id, rec.metric.value, rec.k)
                exists = self._conn.execute(
                    "SELECT 1 FROM performance_results WHERE dataset_id = ? "
                    "AND algorithm_id = ? AND metric = ? AND k = ?",
                    key,
                ).fetchone()
                self._conn.execute(
                    """
                    INSERT INTO performance_results(
                        dataset_id, algorithm_id, metric, k, score
                    ) VALUES (?,?,?,?,?)
                    ON CONFLICT(dataset_id, algorithm_id, metric, k)
                    DO UPDATE SET score = excluded.score
                    """,
                    key + (rec.score,),
                )
                if exists:
                    replaced += 1
                else:
                    inserted += 1
        return (inserted, replaced)

    def query_performance(
        self, dataset_ids, algorithm_ids, metric: MetricKind, k: int
    ) -> list[PerformanceRecord]:
        """Matching records ordered by dataset name then algorithm name.
        Empty id lists select everything."""
        ds_ids = _check_ids(dataset_ids, "dataset_ids")
        alg_ids = _check_ids(algorithm_ids, "algorithm_ids")
        if k not in K_VALUES:
            raise StorageError(f"k must be one of {K_VALUES}, got {k}")
        metric = MetricKind(metric)

        sql = """
            SELECT d.id, d.name, a.id, a.name, p.score
            FROM performance_results p
            JOIN datasets d ON d.id = p.dataset_id
            JOIN algorithms a ON a.id = p.algorithm_id
            WHERE p.metric = ? AND p.k = ?
        """
        params: list = [metric.value, k]
        if ds_ids:
            sql += f" AND p.dataset_id IN ({','.join('?' * len(ds_ids))})"
            params.extend(ds_ids)
        if alg_ids:
            sql += f" AND p.algorithm_id IN ({','.join('?' * len(alg_ids))})"
            params.extend(alg_ids)
        sql += " ORDER BY d.name COLLATE NOCASE, d.name, a.name COLLATE NOCASE, a.name"
        with self._lock:
            rows = self._conn.execute(sql, params).fetchall()
        return [
            PerformanceRecord(
                dataset=DatasetRef(id=r[0], name=r[1]),
                algorithm=AlgorithmRef(id=r[2], name=r[3]),
                metric=metric,
                k=k,
                score=r[4],
            )
            for r in rows
        ]

    # -- projections ---------------------------------------------------

    def store_pca(
        self,
        metric: MetricKind,
        k: int,
        points,
        explained_ratio: tuple[float, float],
        seed: int,
        bootstrap_count: int,
    ) -> int:
        """Atomically replace the stored projection set for (metric, k)."""
        metric = MetricKind(metric)
        computed_at = datetime.now(timezone.utc).isoformat()
        with self._lock, self._conn:
            known_ds = {
                r[0] for r in self._conn.execute("SELECT id FROM datasets")
            }
            for p in points:
                if p.dataset.id not in known_ds:
                    raise UnknownReference(
                        f"dataset id {p.dataset.id} ({p.dataset.name!r}) "
                        f"is not in the catalog"
                    )
            self._conn.execute(
                "DELETE FROM pca_results WHERE metric = ? AND k = ?",
                (metric.value, k),
            )
            self._conn.executemany(
                """
                INSERT INTO pca_results(
                    metric, k, dataset_id, x, y, var_x, var_y,
                    explained_ratio_1, explained_ratio_2,
                    seed, bootstrap_count, computed_at
                ) VALUES (?,?,?,?,?,?,?,?,?,?,?,?)
                """,
                [
                    (
                        metric.value,
                        k,
                        p.dataset.id,
                        p.x,
                        p.y,
                        p.var_x,
                        p.var_y,
                        explained_ratio[0],
                        explained_ratio[1],
                        seed,
                        bootstrap_count,
                        computed_at,
                    )
                    for p in points
                ],
            )
        return len(list(points))

    def fetch_pca(self, metric: MetricKind, k: int) -> list[PcaResultRow]:
        metric = MetricKind(metric)
        with self._lock:
            rows = self._conn.execute(
                """
                SELECT d.id, d.name, p.x, p.y, p.var_x, p.var_y,
                       p.explained_ratio_1, p.explained_ratio_2,
                       p.seed, p.bootstrap_count, p.computed_at
                FROM pca_results p JOIN datasets d ON d.id = p.dataset_id
                WHERE p.metric = ? AND p.k = ?
                ORDER BY d.name COLLATE NOCASE, d.name
                """,
                (metric.value, k),
            ).fetchall()
        if not rows:
            raise NotComputed(f"no stored projection for {metric.value}@{k}")
        return [
            PcaResultRow(
                metric=metric,
                k=k,
                dataset=DatasetRef(id=r[0], name=r[1]),
                x=r[2],
                y=r[3],
                var_x=r[4],
                var_y=r[5],
                explained_ratio_1=r[6],
                explained_ratio_2=r[7],
                seed=r[8],
                bootstrap_count=r[9],
                computed_at=r[10],
            )
            for r in rows
        ]

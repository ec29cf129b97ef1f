"""Operator command line: seed catalogs, ingest performance scores,
precompute projections, and export analysis CSVs.

Ingestion is tolerant by default: a malformed row is reported to stderr
and skipped so a 50k-row bulk load is not hostage to one typo. Pass
--strict to turn any row problem into an immediate nonzero exit.
"""

import argparse
import csv
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import exports, pipeline
from .analysis import difficulty_labels, difficulty_scores
from .config import Config, DEFAULT_BOOTSTRAP, DEFAULT_SEED
from .metadata import (
    MetadataError,
    compute_metadata,
    k_core_prune,
    parse_corpus_row,
    parse_interaction_log,
    read_corpus_header,
)
from .model import K_VALUES, MetricKind, PerformanceRecord, ScoreOutOfRange
from .pca import ApsPoint
from .storage import NotComputed, Store


@dataclass
class IngestManifest:
    """What one seeding run covers: the metadata table, the algorithm
    name list, and optionally a directory of raw interaction logs that
    are k-core pruned before their statistics are computed."""

    metadata_file: str | None = None
    algorithms_file: str | None = None
    logs_dir: str | None = None
    prune_k: int = 5
    performance_files: list = field(default_factory=list)


class RowErrors:
    """Collects row-level problems; fatal immediately under --strict."""

    def __init__(self, strict: bool):
        self.strict = strict
        self.count = 0

    def report(self, message: str):
        self.count += 1
        print(f"warning: {message}", file=sys.stderr)
        if self.strict:
            raise SystemExit(1)


def _seed(store: Store, manifest: IngestManifest, errors: RowErrors) -> int:
    algorithms = []
    if manifest.algorithms_file:
        text = Path(manifest.algorithms_file).read_text(encoding="utf-8")
        algorithms = [line.strip() for line in text.splitlines() if line.strip()]

    metas = []
    if manifest.metadata_file:
        with open(manifest.metadata_file, encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            has_feedback = read_corpus_header(reader, manifest.metadata_file)
            for lineno, row in enumerate(reader, start=2):
                if not row:
                    continue
                try:
                    metas.append(
                        parse_corpus_row(
                            manifest.metadata_file, lineno, row, has_feedback
                        )
                    )
                except MetadataError as exc:
                    errors.report(str(exc))

    if manifest.logs_dir:
        for log_path in sorted(Path(manifest.logs_dir).glob("*.tsv")):
            try:
                log = parse_interaction_log(str(log_path))
                pruned = k_core_prune(log, manifest.prune_k)
                metas.append(compute_metadata(pruned, log_path.stem))
            except MetadataError as exc:
                errors.report(str(exc))

    n_alg, n_ds = store.upsert_catalog(algorithms, metas)
    print(f"{n_alg} algorithms upserted")
    print(f"{n_ds} datasets upserted")
    return 0


def _ingest_performance(
    store: Store,
    path: str,
    metric: MetricKind,
    k: int,
    errors: RowErrors,
) -> int:
    records = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["dataset", "algorithm", "score"]:
            print(
                f"error: {path}:1: expected header dataset,algorithm,score",
                file=sys.stderr,
            )
            return 1
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                errors.report(f"{path}:{lineno}: expected 3 columns, got {len(row)}")
                continue
            ds = store.dataset_by_name(row[0])
            if ds is None:
                errors.report(f"{path}:{lineno}: unknown dataset {row[0]!r}")
                continue
            alg = store.algorithm_by_name(row[1])
            if alg is None:
                errors.report(f"{path}:{lineno}: unknown algorithm {row[1]!r}")
                continue
            try:
                score = float(row[2])
            except ValueError:
                errors.report(f"{path}:{lineno}: score {row[2]!r} is not a number")
                continue
            try:
                records.append(
                    PerformanceRecord(
                        dataset=ds, algorithm=alg, metric=metric, k=k, score=score
                    )
                )
            except ScoreOutOfRange as exc:
                errors.report(f"{path}:{lineno}: {exc}")
    inserted, replaced = store.insert_performance(records)
    print(f"ingested {inserted + replaced} records ({replaced} replaced)")
    return 0


def _precompute(store: Store, config: Config, metric, k) -> int:
    summaries = pipeline.precompute_pca(store, config, metric=metric, k=k)
    any_ok = False
    for s in summaries:
        if s.ok:
            any_ok = True
            r1, r2 = s.explained_ratio
            print(
                f"{s.metric.value}@{s.k}: {s.n_points} points, "
                f"explained ratios {r1:.4f} + {r2:.4f}"
            )
        else:
            print(f"{s.metric.value}@{s.k}: skipped ({s.reason})", file=sys.stderr)
    return 0 if any_ok else 1


def _export(store: Store, config: Config, args) -> int:
    try:
        if args.what == "aps":
            rows = store.fetch_pca(args.metric, args.k)
            points = [
                ApsPoint(
                    dataset=r.dataset, x=r.x, y=r.y, var_x=r.var_x, var_y=r.var_y
                )
                for r in rows
            ]
            scores = difficulty_scores(points)
            labels = difficulty_labels(scores)
            text = exports.build_aps_csv(points, scores, labels)
        elif args.what == "comparison":
            alg1 = store.algorithm_by_name(args.alg1)
            alg2 = store.algorithm_by_name(args.alg2)
            if alg1 is None or alg2 is None:
                missing = args.alg1 if alg1 is None else args.alg2
                print(f"error: unknown algorithm {missing!r}", file=sys.stderr)
                return 1
            recs = store.query_performance(
                [], [alg1.id, alg2.id], args.metric, args.k
            )
            s1 = {r.dataset: r.score for r in recs if r.algorithm.id == alg1.id}
            s2 = {r.dataset: r.score for r in recs if r.algorithm.id == alg2.id}
            entries = [
                (ds, s1[ds], s2[ds]) for ds in sorted(s1, key=lambda d: (d.name.lower(), d.name)) if ds in s2
            ]
            text = exports.build_comparison_csv(entries)
        else:
            metas = [meta for _ref, meta in store.list_datasets()]
            text = exports.build_metadata_csv(metas)
    except NotComputed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    Path(args.out).write_text(text, encoding="utf-8", newline="")
    print(f"wrote {args.out}")
    return 0


def _metric_arg(value: str) -> MetricKind:
    try:
        return MetricKind(value)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"metric must be one of {[m.value for m in MetricKind]}"
        ) from None


def _k_arg(value: str) -> int:
    k = int(value)
    if k not in K_VALUES:
        raise argparse.ArgumentTypeError(f"k must be one of {list(K_VALUES)}")
    return k


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perfspace",
        description="Seed, ingest, precompute, and export the performance-space store.",
    )
    parser.add_argument(
        "--db",
        default=None,
        help="sqlite database path (default: $APS_DB or aps.sqlite3)",
    )
    parser.add_argument(
        "--strict",
        action="store_true",
        help="treat row-level ingestion problems as fatal",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_seed = sub.add_parser("seed", help="seed algorithm and dataset catalogs")
    p_seed.add_argument("--metadata", help="dataset metadata CSV")
    p_seed.add_argument("--algorithms", help="algorithm name list, one per line")
    p_seed.add_argument("--logs-dir", help="directory of *.tsv interaction logs")
    p_seed.add_argument(
        "--prune-k",
        type=int,
        default=5,
        help="k-core pruning threshold for interaction logs (default 5)",
    )

    p_ing = sub.add_parser(
        "ingest-performance", help="ingest a dataset,algorithm,score CSV"
    )
    p_ing.add_argument("file")
    p_ing.add_argument("--metric", type=_metric_arg, required=True)
    p_ing.add_argument("--k", type=_k_arg, required=True)

    p_pca = sub.add_parser(
        "precompute-pca", help="fit and store projections for metric/k combos"
    )
    p_pca.add_argument("--metric", type=_metric_arg, default=None)
    p_pca.add_argument("--k", type=_k_arg, default=None)
    p_pca.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_pca.add_argument("--bootstrap", type=int, default=DEFAULT_BOOTSTRAP)

    p_exp = sub.add_parser("export", help="write an analysis CSV")
    p_exp.add_argument("what", choices=["aps", "comparison", "metadata"])
    p_exp.add_argument("--metric", type=_metric_arg, default=MetricKind.NDCG)
    p_exp.add_argument("--k", type=_k_arg, default=10)
    p_exp.add_argument("--alg1", help="first algorithm name (comparison)")
    p_exp.add_argument("--alg2", help="second algorithm name (comparison)")
    p_exp.add_argument("--out", required=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    db_path = args.db or os.environ.get("APS_DB", "aps.sqlite3")
    errors = RowErrors(strict=args.strict)

    with Store(db_path) as store:
        if args.command == "seed":
            manifest = IngestManifest(
                metadata_file=args.metadata,
                algorithms_file=args.algorithms,
                logs_dir=args.logs_dir,
                prune_k=args.prune_k,
            )
            return _seed(store, manifest, errors)
        if args.command == "ingest-performance":
            return _ingest_performance(store, args.file, args.metric, args.k, errors)
        if args.command == "precompute-pca":
            config = Config(
                db_path=db_path, seed=args.seed, bootstrap_count=args.bootstrap
            )
            return _precompute(store, config, args.metric, args.k)
        if args.command == "export":
            if args.what == "comparison" and not (args.alg1 and args.alg2):
                print(
                    "error: comparison export needs --alg1 and --alg2",
                    file=sys.stderr,
                )
                return 1
            config = Config(db_path=db_path)
            return _export(store, config, args)
    return 1


if __name__ == "__main__":
    sys.exit(main())

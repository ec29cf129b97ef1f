"""Ranking-quality metrics over per-user recommendation lists.

Implements nDCG@K, Hit Ratio@K and Recall@K. The DCG form leaves
position 1 undiscounted:

    DCG_p = rel_1 + sum_{i=2..p} rel_i / log2(i + 1)

and nDCG normalizes by the ideal DCG of the user's relevance judgments.
Hit Ratio is the share of users with at least one relevant item in the
top K; Recall is the per-user fraction of relevant items retrieved. All
aggregate scores are arithmetic means over users.

Rankings arrive precomputed; nothing here runs a recommender. Input
files are tab-separated UTF-8 text: ranked lists as
``user<TAB>rank<TAB>item<TAB>gain`` and relevance judgments as
``user<TAB>item<TAB>gain``.
"""

import math
from dataclasses import dataclass

from .model import AlgorithmRef, DatasetRef, MetricKind, PerformanceRecord


class MetricError(ValueError):
    pass


class ZeroIdeal(MetricError):
    """All relevance gains are zero; nDCG's denominator vanishes."""


class EmptyUserSet(MetricError):
    pass


class RunFormatError(MetricError):
    pass


@dataclass(frozen=True)
class UserRun:
    """One user's ranked recommendations plus relevance judgments.

    relevant maps item id to a gain >= 0; items with positive gain form
    the relevant set for hit and recall.
    """

    user: str
    ranked_items: tuple
    relevant: dict

    def __post_init__(self):
        if len(set(self.ranked_items)) != len(self.ranked_items):
            raise RunFormatError(
                f"duplicate items in ranking for user {self.user!r}"
            )
        if any(g < 0 for g in self.relevant.values()):
            raise RunFormatError(
                f"negative gain in judgments for user {self.user!r}"
            )


@dataclass(frozen=True)
class EvaluationRun:
    """All user runs of one algorithm on one dataset."""

    dataset: DatasetRef
    algorithm: AlgorithmRef
    users: tuple


def dcg_at_k(gains, k: int) -> float:
    """Discounted cumulative gain of the first k gains; the first
    position carries no discount."""
    if k < 1:
        raise MetricError(f"k must be >= 1, got {k}")
    total = 0.0
    for i, gain in enumerate(gains[:k], start=1):
        if i == 1:
            total += gain
        else:
            total += gain / math.log2(i + 1)
    return total


def _positive_relevant(run: UserRun) -> set:
    return {item for item, gain in run.relevant.items() if gain > 0}


def ndcg_at_k(run: UserRun, k: int) -> float:
    gains = [run.relevant.get(item, 0.0) for item in run.ranked_items]
    ideal = dcg_at_k(sorted(run.relevant.values(), reverse=True), k)
    if ideal == 0.0:
        raise ZeroIdeal(f"user {run.user!r} has no positive gains")
    return dcg_at_k(gains, k) / ideal


def hit_at_k(run: UserRun, k: int) -> int:
    if k < 1:
        raise MetricError(f"k must be >= 1, got {k}")
    relevant = _positive_relevant(run)
    return int(any(item in relevant for item in run.ranked_items[:k]))


def recall_at_k(run: UserRun, k: int) -> float:
    if k < 1:
        raise MetricError(f"k must be >= 1, got {k}")
    relevant = _positive_relevant(run)
    if not relevant:
        raise ZeroIdeal(f"user {run.user!r} has no positive gains")
    top = set(run.ranked_items[:k])
    return len(top & relevant) / len(relevant)


def hit_ratio_at_k(runs, k: int) -> float:
    if not runs:
        raise EmptyUserSet("need at least one user")
    return sum(hit_at_k(r, k) for r in runs) / len(runs)


_PER_USER = {
    MetricKind.NDCG: ndcg_at_k,
    MetricKind.HIT_RATIO: hit_at_k,
    MetricKind.RECALL: recall_at_k,
}


def evaluate(run: EvaluationRun, metric: MetricKind, k: int) -> PerformanceRecord:
    """Score one algorithm on one dataset: the user-mean of the chosen
    per-user metric, packaged as a PerformanceRecord."""
    if not run.users:
        raise EmptyUserSet(
            f"no users for {run.dataset.name}/{run.algorithm.name}"
        )
    per_user = _PER_USER[MetricKind(metric)]
    score = sum(per_user(u, k) for u in run.users) / len(run.users)
    return PerformanceRecord(
        dataset=run.dataset,
        algorithm=run.algorithm,
        metric=MetricKind(metric),
        k=k,
        score=score,
    )


def _split_line(line: str, n_fields: int, path: str, lineno: int):
    parts = line.rstrip("\n").split("\t")
    if len(parts) != n_fields:
        raise RunFormatError(
            f"{path}:{lineno}: expected {n_fields} tab-separated fields, "
            f"got {len(parts)}"
        )
    return parts


def parse_relevance_file(path: str) -> dict:
    """Read `user<TAB>item<TAB>gain` lines into {user: {item: gain}}."""
    judgments: dict[str, dict] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            user, item, gain = _split_line(line, 3, path, lineno)
            try:
                value = float(gain)
            except ValueError:
                raise RunFormatError(
                    f"{path}:{lineno}: gain {gain!r} is not a number"
                ) from None
            judgments.setdefault(user, {})[item] = value
    return judgments


def parse_ranking_file(path: str, judgments: dict):
    """Read `user<TAB>rank<TAB>item<TAB>gain` lines into UserRuns.

    Rows are ordered by their rank field per user, so shuffled files
    evaluate identically. Users absent from ``judgments`` (or with no
    positive gain) are skipped: every metric is degenerate for them.
    """
    by_user: dict[str, list] = {}
    for p, recs in _iter_ranking_rows(path):
        by_user.setdefault(p, []).extend(recs)
    runs = []
    for user in sorted(by_user):
        relevant = judgments.get(user, {})
        if not any(g > 0 for g in relevant.values()):
            continue
        ordered = sorted(by_user[user], key=lambda rec: rec[0])
        items = tuple(item for _, item in ordered)
        runs.append(UserRun(user=user, ranked_items=items, relevant=relevant))
    return runs


def _iter_ranking_rows(path: str):
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            user, rank, item, _gain = _split_line(line, 4, path, lineno)
            try:
                position = int(rank)
            except ValueError:
                raise RunFormatError(
                    f"{path}:{lineno}: rank {rank!r} is not an integer"
                ) from None
            if position < 1:
                raise RunFormatError(
                    f"{path}:{lineno}: rank must be >= 1, got {position}"
                )
            yield user, [(position, item)]

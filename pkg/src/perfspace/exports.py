"""Canonical CSV serializations of the three exportable views.

These builders are the single source of truth for export bytes: the CLI
writes their output verbatim, and any other exporter (e.g. a browser
client) must reproduce them byte for byte. Hence the strict conventions:
UTF-8, LF line endings, comma delimiter, minimal RFC-4180 quoting, `.`
decimal separator, and floats rendered with Python's shortest
round-trip repr.
"""

import csv
import io

from .analysis import classify_region
from .metadata import classify_risk

APS_HEADER = ["dataset", "x", "y", "var_x", "var_y", "difficulty_score", "difficulty_label"]
COMPARISON_HEADER = ["dataset", "score_alg1", "score_alg2", "region"]
METADATA_HEADER = [
    "dataset",
    "users",
    "items",
    "interactions",
    "user_item_ratio",
    "density",
    "mean_per_user",
    "mean_per_item",
    "max_per_user",
    "min_per_user",
    "max_per_item",
    "min_per_item",
    "feedback",
    "risk_user_item_ratio",
    "risk_user_item_ratio_cause",
    "risk_mean_per_user",
    "risk_mean_per_user_cause",
    "risk_mean_per_item",
    "risk_mean_per_item_cause",
]


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _render(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def build_aps_csv(points, scores: dict, labels: dict) -> str:
    """Positions plus difficulty per dataset, in the given point order.

    scores/labels are keyed by DatasetRef, as produced by
    difficulty_scores and difficulty_labels over the same points.
    """
    rows = [
        (
            p.dataset.name,
            p.x,
            p.y,
            p.var_x,
            p.var_y,
            scores[p.dataset],
            labels[p.dataset].value,
        )
        for p in points
    ]
    return _render(APS_HEADER, rows)


def build_comparison_csv(entries) -> str:
    """Two-algorithm comparison rows: (DatasetRef, score1, score2)
    triples in the given order, region derived from the scores."""
    rows = [
        (ds.name, s1, s2, classify_region(s1, s2).value)
        for ds, s1, s2 in entries
    ]
    return _render(COMPARISON_HEADER, rows)


def build_metadata_csv(metas) -> str:
    """Full metadata plus the three risk classifications per dataset.

    Risk columns carry the band description (the human-readable
    severity, e.g. "Very user-heavy") and its cause.
    """
    rows = []
    for meta in metas:
        risk = classify_risk(meta)
        rows.append(
            (
                meta.name,
                meta.num_users,
                meta.num_items,
                meta.num_interactions,
                meta.user_item_ratio,
                meta.density,
                meta.mean_per_user,
                meta.mean_per_item,
                meta.max_per_user,
                meta.min_per_user,
                meta.max_per_item,
                meta.min_per_item,
                meta.feedback.value if meta.feedback else None,
                risk.user_item_ratio.description,
                risk.user_item_ratio.cause,
                risk.mean_per_user.description,
                risk.mean_per_user.cause,
                risk.mean_per_item.description,
                risk.mean_per_item.cause,
            )
        )
    return _render(METADATA_HEADER, rows)

"""Dataset metadata: statistics over raw interaction logs, k-core
pruning, static risk-band classification, and the bundled 96-dataset
metadata corpus.

Risk bands use fixed breakpoints (they do not move with the data, unlike
the difficulty quintiles). Bands are open below and closed above, so the
real line tiles without gaps: band i covers (bp_{i-1}, bp_i], the first
band everything up to and including bp_1, the last everything above the
final breakpoint. Band labels keep the printed "< 0.35" / "a - b" /
"> 5.16" range text even though the first band's membership test is
value <= 0.35 (a half-open first band would leave the breakpoint itself
unclassifiable).
"""

import csv
from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass
from enum import Enum


class MetadataError(ValueError):
    pass


class EmptyLog(MetadataError):
    pass


class ParseError(MetadataError):
    pass


class RatioMismatch(MetadataError):
    pass


# published ratios are rounded to 2 decimals; allow half a ULP of that
RATIO_TOLERANCE = 0.005 + 1e-12


class Feedback(str, Enum):
    IMPLICIT = "implicit"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class Interaction:
    user: str
    item: str
    value: float | None = None
    timestamp: int | None = None


@dataclass(frozen=True)
class InteractionLog:
    """Deduplicated (user, item) interaction list.

    Construction keeps the first occurrence of each (user, item) pair,
    so the no-duplicates invariant holds by construction.
    """

    entries: tuple
    feedback: Feedback = Feedback.IMPLICIT

    def __post_init__(self):
        seen = set()
        deduped = []
        for entry in self.entries:
            key = (entry.user, entry.item)
            if key not in seen:
                seen.add(key)
                deduped.append(entry)
        object.__setattr__(self, "entries", tuple(deduped))

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class DatasetMeta:
    """Appendix-style descriptive statistics for one dataset.

    Per-user/per-item extremes are only known when computed from a raw
    log; corpus rows loaded from the metadata table leave them None.
    """

    name: str
    num_users: int
    num_items: int
    num_interactions: int
    user_item_ratio: float
    density: float
    mean_per_user: float
    mean_per_item: float
    max_per_user: int | None = None
    min_per_user: int | None = None
    max_per_item: int | None = None
    min_per_item: int | None = None
    feedback: Feedback | None = None

    def __post_init__(self):
        if min(self.num_users, self.num_items, self.num_interactions) <= 0:
            raise MetadataError(f"{self.name!r}: counts must be positive")
        derived = self.num_users / self.num_items
        if abs(self.user_item_ratio - derived) > RATIO_TOLERANCE:
            raise RatioMismatch(
                f"{self.name!r}: ratio {self.user_item_ratio} != "
                f"users/items = {derived:.4f}"
            )
        if not (0.0 <= self.density <= 1.0):
            raise MetadataError(f"{self.name!r}: density outside [0, 1]")
        for mean, lo, hi in (
            (self.mean_per_user, self.min_per_user, self.max_per_user),
            (self.mean_per_item, self.min_per_item, self.max_per_item),
        ):
            if lo is not None and hi is not None and not (lo <= mean <= hi):
                raise MetadataError(
                    f"{self.name!r}: mean {mean} outside [{lo}, {hi}]"
                )


class RiskDimension(str, Enum):
    USER_ITEM_RATIO = "user_item_ratio"
    MEAN_PER_USER = "mean_per_user"
    MEAN_PER_ITEM = "mean_per_item"


@dataclass(frozen=True)
class RiskBand:
    dimension: RiskDimension
    band_index: int  # 1-based position within the dimension's table
    label: str  # printed range, e.g. "2.08 - 5.16"
    description: str
    cause: str


# Static threshold tables. Band text is kept verbatim, including its
# inconsistent capitalization; these strings are displayed, not parsed.
RATIO_BREAKPOINTS = (0.35, 0.53, 1.03, 1.66, 2.08, 5.16)
RATIO_BANDS = (
    ("< 0.35", "Extremely item-heavy", "Too many items with too few users"),
    ("0.35 - 0.53", "Very item-heavy", "Items start getting ignored"),
    ("0.53 - 1.03", "Slightly item-heavy", "Good coverage of items and users"),
    ("1.03 - 1.66", "Balanced", "Optimal learning conditions"),
    (
        "1.66 - 2.08",
        "Slightly user-heavy",
        "Fewer items, users converge on same content",
    ),
    ("2.08 - 5.16", "Very user-heavy", "Too few items for many users"),
    ("> 5.16", "Extremely user-heavy", "Severe lack of items"),
)

PER_USER_BREAKPOINTS = (8.63, 13.94, 20.77, 28.96)
PER_USER_BANDS = (
    (
        "< 8.63",
        "Low mean interaction per user value with high cold-start risk "
        "and long-tail bias",
        "Few users with many interactions",
    ),
    (
        "8.63 - 13.94",
        "Mostly balanced interaction per users values with some bias "
        "and cold-start risk",
        "Some users with many interactions",
    ),
    (
        "13.94 - 20.77",
        "Balanced mean interaction per user value with low bias and "
        "cold-start risk",
        "Balanced distribution of interactions",
    ),
    (
        "20.77 - 28.96",
        "Few items with a high number of Interactions, which could lead "
        "to popularity bias",
        "Some users dominate the interaction space",
    ),
    (
        "> 28.96",
        "Several users with high number of Interactions, which lead to "
        "popularity bias",
        "Many users dominate the interaction space",
    ),
)

PER_ITEM_BREAKPOINTS = (10.48, 15.09, 22.01, 66.22)
PER_ITEM_BANDS = (
    (
        "< 10.48",
        "Low mean interaction per item value with high cold-start risk "
        "and long-tail bias",
        "Few items with many interactions",
    ),
    (
        "10.48 - 15.09",
        "Mostly balanced Interaction per Item values with some bias and "
        "cold-start risk",
        "Some items with many interactions",
    ),
    (
        "15.09 - 22.01",
        "Balanced Mean Interaction per Item value with low bias and "
        "cold-start risk",
        "Balanced distribution of interactions",
    ),
    (
        "22.01 - 66.22",
        "Few items with a high number of interactions, which could lead "
        "to Popularity Bias",
        "Some items dominate the interaction space",
    ),
    (
        "> 66.22",
        "Several items with high number of interactions, which lead to "
        "popularity bias",
        "Many items dominate the interaction space",
    ),
)

_TABLES = {
    RiskDimension.USER_ITEM_RATIO: (RATIO_BREAKPOINTS, RATIO_BANDS),
    RiskDimension.MEAN_PER_USER: (PER_USER_BREAKPOINTS, PER_USER_BANDS),
    RiskDimension.MEAN_PER_ITEM: (PER_ITEM_BREAKPOINTS, PER_ITEM_BANDS),
}


def classify_band(dimension: RiskDimension, value: float) -> RiskBand:
    """Locate a value in its dimension's threshold table; upper bounds
    inclusive."""
    breakpoints, bands = _TABLES[dimension]
    idx = bisect_left(breakpoints, value)
    label, description, cause = bands[idx]
    return RiskBand(
        dimension=dimension,
        band_index=idx + 1,
        label=label,
        description=description,
        cause=cause,
    )


@dataclass(frozen=True)
class RiskProfile:
    user_item_ratio: RiskBand
    mean_per_user: RiskBand
    mean_per_item: RiskBand


def classify_risk(meta: DatasetMeta) -> RiskProfile:
    return RiskProfile(
        user_item_ratio=classify_band(
            RiskDimension.USER_ITEM_RATIO, meta.user_item_ratio
        ),
        mean_per_user=classify_band(
            RiskDimension.MEAN_PER_USER, meta.mean_per_user
        ),
        mean_per_item=classify_band(
            RiskDimension.MEAN_PER_ITEM, meta.mean_per_item
        ),
    )


def compute_metadata(log: InteractionLog, name: str) -> DatasetMeta:
    """Descriptive statistics of a (deduplicated) interaction log."""
    if not log.entries:
        raise EmptyLog(f"{name!r}: no interactions")
    per_user = Counter(e.user for e in log.entries)
    per_item = Counter(e.item for e in log.entries)
    n_users = len(per_user)
    n_items = len(per_item)
    n_inter = len(log.entries)
    return DatasetMeta(
        name=name,
        num_users=n_users,
        num_items=n_items,
        num_interactions=n_inter,
        user_item_ratio=n_users / n_items,
        density=n_inter / (n_users * n_items),
        mean_per_user=n_inter / n_users,
        mean_per_item=n_inter / n_items,
        max_per_user=max(per_user.values()),
        min_per_user=min(per_user.values()),
        max_per_item=max(per_item.values()),
        min_per_item=min(per_item.values()),
        feedback=log.feedback,
    )


def k_core_prune(log: InteractionLog, k: int) -> InteractionLog:
    """Largest sub-log where every user and item has >= k interactions.

    Removal cascades: dropping a thin user can push items below k and
    vice versa, so pruning repeats until nothing changes. The result
    may be empty.
    """
    if k < 1:
        raise MetadataError(f"k must be >= 1, got {k}")
    entries = log.entries
    while True:
        users = Counter(e.user for e in entries)
        items = Counter(e.item for e in entries)
        kept = tuple(
            e for e in entries if users[e.user] >= k and items[e.item] >= k
        )
        if len(kept) == len(entries):
            return InteractionLog(entries=kept, feedback=log.feedback)
        entries = kept


_CORPUS_BASE_HEADER = ["dataset", "users", "items", "interactions", "user_item_ratio"]


def read_corpus_header(reader, path: str) -> bool:
    """Validate the corpus header row; returns whether the optional
    trailing feedback column is present."""
    header = next(reader, None)
    if header is None:
        raise ParseError(f"{path}: empty file")
    if header != _CORPUS_BASE_HEADER and header != _CORPUS_BASE_HEADER + ["feedback"]:
        raise ParseError(f"{path}:1: unexpected header {header!r}")
    return len(header) == 6


def parse_corpus_row(path: str, lineno: int, row, has_feedback: bool) -> DatasetMeta:
    """Turn one corpus CSV row into DatasetMeta, re-deriving the ratio
    and insisting the published value agrees within 2-decimal rounding."""
    expected = 6 if has_feedback else 5
    if len(row) != expected:
        raise ParseError(
            f"{path}:{lineno}: expected {expected} columns, got {len(row)}"
        )
    name = row[0]
    try:
        users = int(row[1])
        items = int(row[2])
        interactions = int(row[3])
    except ValueError as exc:
        raise ParseError(f"{path}:{lineno}: {exc}") from None
    try:
        ratio = float(row[4])
    except ValueError:
        raise ParseError(
            f"{path}:{lineno}: column 5: ratio {row[4]!r} is not a number"
        ) from None
    if items <= 0 or users <= 0 or interactions <= 0:
        raise ParseError(f"{path}:{lineno}: counts must be positive")
    derived = users / items
    if abs(ratio - derived) > RATIO_TOLERANCE:
        raise RatioMismatch(
            f"{path}:{lineno}: published ratio {ratio} vs "
            f"users/items = {derived:.4f}"
        )
    feedback = None
    if has_feedback and row[5]:
        try:
            feedback = Feedback(row[5])
        except ValueError:
            raise ParseError(
                f"{path}:{lineno}: column 6: unknown feedback kind {row[5]!r}"
            ) from None
    return DatasetMeta(
        name=name,
        num_users=users,
        num_items=items,
        num_interactions=interactions,
        user_item_ratio=ratio,
        density=interactions / (users * items),
        mean_per_user=interactions / users,
        mean_per_item=interactions / items,
        feedback=feedback,
    )


def load_appendix_corpus(path: str) -> list:
    """Read the dataset metadata table (CSV with header
    ``dataset,users,items,interactions,user_item_ratio[,feedback]``).

    Strict: the first malformed row or ratio mismatch aborts the load.
    Operators who want row-level tolerance iterate the rows themselves
    (see the ingestion CLI).
    """
    rows: list[DatasetMeta] = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        has_feedback = read_corpus_header(reader, path)
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            rows.append(parse_corpus_row(path, lineno, row, has_feedback))
    return rows


def parse_interaction_log(path: str, feedback: Feedback | None = None) -> InteractionLog:
    """Read `user<TAB>item[<TAB>value[<TAB>timestamp]]` lines.

    Feedback is inferred when not forced: explicit iff any row carries
    a value field.
    """
    entries = []
    saw_value = False
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            parts = line.rstrip("\n").split("\t")
            if not (2 <= len(parts) <= 4):
                raise ParseError(
                    f"{path}:{lineno}: expected 2-4 tab-separated fields, "
                    f"got {len(parts)}"
                )
            value = None
            timestamp = None
            if len(parts) >= 3 and parts[2] != "":
                try:
                    value = float(parts[2])
                except ValueError:
                    raise ParseError(
                        f"{path}:{lineno}: column 3: value {parts[2]!r} is "
                        f"not a number"
                    ) from None
                saw_value = True
            if len(parts) == 4 and parts[3] != "":
                try:
                    timestamp = int(parts[3])
                except ValueError:
                    raise ParseError(
                        f"{path}:{lineno}: column 4: timestamp {parts[3]!r} "
                        f"is not an integer"
                    ) from None
            entries.append(
                Interaction(
                    user=parts[0], item=parts[1], value=value, timestamp=timestamp
                )
            )
    if feedback is None:
        feedback = Feedback.EXPLICIT if saw_value else Feedback.IMPLICIT
    return InteractionLog(entries=tuple(entries), feedback=feedback)

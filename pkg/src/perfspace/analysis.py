"""Analytics over projected dataset points and algorithm pairs:
difficulty scoring and labeling, variance-normalized similarity, and
the five-region two-algorithm comparison.

Difficulty averages each dataset's min-max-normalized coordinates, so a
score near 0 marks a dataset most algorithms handle poorly (hard) and a
score near 1 an easy one. Labels are quintiles of that score, lowest
fifth = very hard.

Similarity between two datasets divides squared coordinate differences
by summed positional variances before taking the root:

    distance = sqrt((x2-x1)^2 / (varX1+varX2) + (y2-y1)^2 / (varY1+varY2))

and confidence decays as e^(-distance); dissimilarity is its exact
complement. Denominators are floored at 1e-9 because tiny matrices can
produce zero bootstrap variance.
"""

import math
from dataclasses import dataclass
from enum import Enum

from .model import DatasetRef
from .pca import ApsPoint
from .quintiles import QuintileGroup, classify, quintile_boundaries

VARIANCE_FLOOR = 1e-9


class AnalysisError(ValueError):
    pass


class TooFewPoints(AnalysisError):
    pass


class UnknownDataset(AnalysisError):
    pass


class MissingScores(AnalysisError):
    pass


class OutOfRange(AnalysisError):
    pass


class DifficultyLabel(str, Enum):
    VERY_HARD = "very_hard"
    HARD = "hard"
    MEDIUM = "medium"
    EASY = "easy"
    VERY_EASY = "very_easy"


_GROUP_TO_LABEL = {
    QuintileGroup.G1: DifficultyLabel.VERY_HARD,
    QuintileGroup.G2: DifficultyLabel.HARD,
    QuintileGroup.G3: DifficultyLabel.MEDIUM,
    QuintileGroup.G4: DifficultyLabel.EASY,
    QuintileGroup.G5: DifficultyLabel.VERY_EASY,
}


class ComparisonRegion(str, Enum):
    ALG1_WINS = "alg1_wins"
    ALG2_WINS = "alg2_wins"
    BOTH_WELL = "both_well"
    BOTH_POORLY = "both_poorly"
    BOTH_MODERATE = "both_moderate"


@dataclass(frozen=True)
class SimilarityScore:
    distance: float
    confidence: float
    dissimilarity: float


def difficulty_scores(points) -> dict:
    """Map each dataset to (normX + normY) / 2 with min-max normalized
    coordinates. A collapsed axis (max == min) contributes 0.5 for
    every dataset rather than a 0/0."""
    if len(points) < 2:
        raise TooFewPoints("difficulty needs >= 2 points")
    min_x = min(p.x for p in points)
    max_x = max(p.x for p in points)
    min_y = min(p.y for p in points)
    max_y = max(p.y for p in points)

    def norm(v, lo, hi):
        if hi == lo:
            return 0.5
        return (v - lo) / (hi - lo)

    return {
        p.dataset: (norm(p.x, min_x, max_x) + norm(p.y, min_y, max_y)) / 2
        for p in points
    }


def difficulty_labels(scores: dict) -> dict:
    """Quintile-classify difficulty scores into the five labels. Works
    below 5 datasets too, just with coarse boundaries."""
    if not scores:
        return {}
    bounds = quintile_boundaries(list(scores.values()))
    return {
        ds: _GROUP_TO_LABEL[classify(s, bounds)] for ds, s in scores.items()
    }


def vn_distance(a: ApsPoint, b: ApsPoint) -> float:
    dx2 = (b.x - a.x) ** 2
    dy2 = (b.y - a.y) ** 2
    return math.sqrt(
        dx2 / max(a.var_x + b.var_x, VARIANCE_FLOOR)
        + dy2 / max(a.var_y + b.var_y, VARIANCE_FLOOR)
    )


def similarity(a: ApsPoint, b: ApsPoint) -> SimilarityScore:
    distance = vn_distance(a, b)
    confidence = math.exp(-distance)
    return SimilarityScore(
        distance=distance,
        confidence=confidence,
        dissimilarity=1.0 - confidence,
    )


def rank_by_similarity(points, target: DatasetRef, descending: bool = True):
    """Rank every other dataset against the target by confidence.

    descending=True puts the most similar first; ties fall back to
    ascending dataset name so the order is total.
    """
    anchor = next((p for p in points if p.dataset == target), None)
    if anchor is None:
        raise UnknownDataset(f"{target.name!r} is not among the points")
    scored = [
        (p.dataset, similarity(anchor, p)) for p in points if p.dataset != target
    ]
    sign = -1.0 if descending else 1.0
    scored.sort(key=lambda pair: (sign * pair[1].confidence, pair[0].name))
    return scored


def classify_region(x: float, y: float) -> ComparisonRegion:
    """Locate an (alg1 score, alg2 score) pair in the comparison plane.

    Corner triangles claim their boundary lines: the first inequality
    that holds wins, checked in the order below.
    """
    if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
        raise OutOfRange(f"({x}, {y}) outside the unit square")
    if y - x >= 0.5:
        return ComparisonRegion.ALG2_WINS
    if x - y >= 0.5:
        return ComparisonRegion.ALG1_WINS
    if x + y >= 1.5:
        return ComparisonRegion.BOTH_WELL
    if x + y <= 0.5:
        return ComparisonRegion.BOTH_POORLY
    return ComparisonRegion.BOTH_MODERATE


def comparison_report(datasets, scores1: dict, scores2: dict) -> dict:
    """Bucket datasets by comparison region.

    scores1/scores2 map DatasetRef to the two algorithms' scores. Every
    selected dataset must appear in both maps. Returns a region-keyed
    dict of (dataset, score1, score2) lists, each sorted by name; all
    five regions are present even when empty.
    """
    report = {region: [] for region in ComparisonRegion}
    for ds in datasets:
        if ds not in scores1 or ds not in scores2:
            raise MissingScores(f"no score pair for {ds.name!r}")
        s1, s2 = scores1[ds], scores2[ds]
        report[classify_region(s1, s2)].append((ds, s1, s2))
    for bucket in report.values():
        bucket.sort(key=lambda entry: entry[0].name)
    return report

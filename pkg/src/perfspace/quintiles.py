"""Percentile interpolation, quintile boundaries, five-group
classification, and relative rank position.

The percentile uses linear interpolation between closest ranks on the
ascending sort: with n values and 0 < p < 100,

    h = (p / 100) * (n - 1) + 1        (1-based fractional rank)
    k = floor(h), f = h - k
    percentile = s_(k) + (s_(k+1) - s_(k)) * f

Group boundaries are the 20th/40th/60th/80th percentiles and groups use
inclusive upper bounds: G1 is s <= Q20, G2 is Q20 < s <= Q40, and so on
up to G5 above Q80. With heavy ties the groups cannot each hold exactly
20% of the observations; the boundary rules are applied as written.
"""

import math
from dataclasses import dataclass
from enum import IntEnum


class QuintileError(ValueError):
    pass


class EmptyInput(QuintileError):
    pass


class PercentileOutOfRange(QuintileError):
    pass


class ValueNotInSet(QuintileError):
    pass


@dataclass(frozen=True)
class QuintileBoundaries:
    q20: float
    q40: float
    q60: float
    q80: float

    def __post_init__(self):
        if not (self.q20 <= self.q40 <= self.q60 <= self.q80):
            raise QuintileError("boundaries must be non-decreasing")


class QuintileGroup(IntEnum):
    G1 = 1
    G2 = 2
    G3 = 3
    G4 = 4
    G5 = 5


def percentile(values, p: float) -> float:
    """Linear-interpolation percentile of a non-empty multiset,
    0 < p < 100."""
    if not values:
        raise EmptyInput("percentile of an empty multiset")
    if not (0.0 < p < 100.0):
        raise PercentileOutOfRange(f"p must lie in (0, 100), got {p}")
    s = sorted(values)
    n = len(s)
    h = (p / 100.0) * (n - 1) + 1
    k = math.floor(h)
    f = h - k
    if k >= n:
        return float(s[n - 1])
    if f == 0.0:
        return float(s[k - 1])
    return s[k - 1] + (s[k] - s[k - 1]) * f


def quintile_boundaries(values) -> QuintileBoundaries:
    if not values:
        raise EmptyInput("boundaries of an empty multiset")
    return QuintileBoundaries(
        q20=percentile(values, 20),
        q40=percentile(values, 40),
        q60=percentile(values, 60),
        q80=percentile(values, 80),
    )


def classify(value: float, b: QuintileBoundaries) -> QuintileGroup:
    if value <= b.q20:
        return QuintileGroup.G1
    if value <= b.q40:
        return QuintileGroup.G2
    if value <= b.q60:
        return QuintileGroup.G3
    if value <= b.q80:
        return QuintileGroup.G4
    return QuintileGroup.G5


def relative_position(value: float, values) -> float:
    """(rank - 1) / (n - 1) with rank 1 at the smallest value; tied
    values take the minimum rank among equals. Singleton inputs map
    to 0."""
    if not values:
        raise EmptyInput("relative position within an empty multiset")
    if value not in values:
        raise ValueNotInSet(f"{value!r} is not a member of the multiset")
    n = len(values)
    if n == 1:
        return 0.0
    rank = 1 + sum(1 for v in values if v < value)
    return (rank - 1) / (n - 1)

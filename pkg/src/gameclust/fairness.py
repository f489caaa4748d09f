"""Fairness indices over per-objective improvements.

Jain's index rates how evenly a set of nonnegative values is spread:
1 when all values are equal, down to 1/n when a single value carries
everything.  The geometric mean index collapses the values into one
number; with two improvements measured in percent, 100 is the ideal.
Negative improvements must be clamped to zero before indexing, since
both indices presume nonnegative shares.
"""

from __future__ import annotations

import math
from typing import List, Sequence

from .errors import ConfigError, UndefinedIndexError


def _validated(values: Sequence[float]) -> List[float]:
    xs = [float(v) for v in values]
    if not xs:
        raise ConfigError("need at least one value")
    if any(x < 0 for x in xs):
        raise ConfigError(f"values must be nonnegative, got {xs}")
    return xs


def jain_index(values: Sequence[float]) -> float:
    """(sum x)^2 / (n * sum x^2), in [1/n, 1]; undefined when all values are zero."""
    xs = _validated(values)
    square_sum = sum(x * x for x in xs)
    if square_sum == 0:
        raise UndefinedIndexError("Jain's index is undefined for all-zero values")
    total = sum(xs)
    return (total * total) / (len(xs) * square_sum)


def geometric_mean_index(values: Sequence[float]) -> float:
    """n-th root of the product of the values."""
    xs = _validated(values)
    product = math.prod(xs)
    return product ** (1.0 / len(xs))


def clamp_nonnegative(values: Sequence[float]) -> List[float]:
    """Clamp negatives to zero, the required preprocessing for both indices."""
    return [max(0.0, float(v)) for v in values]

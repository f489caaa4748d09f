"""Core data types and the two clustering objectives.

Compaction is measured by SSE, the sum of squared Euclidean distances
from each point to its assigned cluster center.  Balance is measured by
the load metric, the sum of squared deviations of cluster loads from
the ideal load n/k.  The ideal load is carried as an exact rational;
rounding to whole units happens only where transfers are planned.

All types are immutable values after construction and every operation
here is a pure function, so they can be evaluated from multiple threads
without coordination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .errors import ConfigError, StructuralError

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class Dataset:
    """n points in d-dimensional Euclidean space; immutable once built."""

    points: np.ndarray

    def __post_init__(self) -> None:
        pts = np.array(self.points, dtype=np.float64)
        if pts.ndim != 2:
            raise StructuralError(f"points must be a 2-d array, got ndim={pts.ndim}")
        if pts.shape[0] < 1 or pts.shape[1] < 1:
            raise StructuralError(f"need at least one point and one dimension, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise StructuralError("points must be finite")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return int(self.points.shape[0])

    @property
    def dim(self) -> int:
        return int(self.points.shape[1])


@dataclass(frozen=True)
class Clustering:
    """A full assignment of points to k clusters.

    ``centers[c]`` is always the arithmetic mean of cluster c's points;
    ``loads[c]`` is the number of points assigned to c.  Empty clusters
    are rejected: every algorithm in this package keeps all k clusters
    populated.
    """

    assignment: np.ndarray
    k: int
    centers: np.ndarray
    loads: np.ndarray

    def __post_init__(self) -> None:
        a = np.array(self.assignment, dtype=np.int64)
        c = np.array(self.centers, dtype=np.float64)
        l = np.array(self.loads, dtype=np.int64)
        if a.ndim != 1:
            raise StructuralError("assignment must be 1-d")
        if c.ndim != 2 or c.shape[0] != self.k:
            raise StructuralError("centers must have shape (k, dim)")
        if l.shape != (self.k,):
            raise StructuralError("loads must have shape (k,)")
        for arr, name in ((a, "assignment"), (c, "centers"), (l, "loads")):
            arr.flags.writeable = False
        object.__setattr__(self, "assignment", a)
        object.__setattr__(self, "centers", c)
        object.__setattr__(self, "loads", l)

    @staticmethod
    def from_assignment(dataset: Dataset, assignment: Sequence[int], k: int) -> "Clustering":
        """Build a clustering from an assignment, recomputing loads and mean centers."""
        a = np.asarray(assignment, dtype=np.int64)
        if a.shape != (dataset.n,):
            raise StructuralError(f"assignment length {a.shape} does not match n={dataset.n}")
        if k < 1:
            raise ConfigError(f"k must be >= 1, got {k}")
        if a.min() < 0 or a.max() >= k:
            raise StructuralError("assignment values must lie in [0, k)")
        loads = np.bincount(a, minlength=k)
        if np.any(loads == 0):
            empty = int(np.flatnonzero(loads == 0)[0])
            raise StructuralError(f"cluster {empty} is empty")
        centers = np.empty((k, dataset.dim), dtype=np.float64)
        for c in range(k):
            centers[c] = dataset.points[a == c].mean(axis=0)
        return Clustering(assignment=a, k=k, centers=centers, loads=loads)

    def members(self, cluster_id: int) -> np.ndarray:
        """Indices of the points assigned to ``cluster_id``, ascending."""
        return np.flatnonzero(self.assignment == cluster_id)


@dataclass(frozen=True)
class ObjectiveState:
    """Snapshot of both objectives for one clustering."""

    sse: float
    load_metric: float
    ideal_load: Fraction


@dataclass(frozen=True)
class ImprovementReport:
    """Percent improvement of a final clustering over an initial one.

    Positive means the objective got smaller.  A value is None when the
    initial objective is zero and the final one is not, which leaves the
    percentage undefined.
    """

    sse_improvement_pct: Optional[float]
    l_improvement_pct: Optional[float]


def ideal_load(n: int, k: int) -> Fraction:
    """Exact ideal per-cluster load n/k.

    Kept as a rational on purpose: truncating here would distort the
    load metric and the player/resource split downstream.
    """
    if k < 1 or k > n:
        raise ConfigError(f"need 1 <= k <= n, got k={k}, n={n}")
    return Fraction(n, k)


def _check_consistent(dataset: Dataset, clustering: Clustering) -> None:
    if clustering.assignment.shape[0] != dataset.n:
        raise StructuralError(
            f"clustering covers {clustering.assignment.shape[0]} points, dataset has {dataset.n}"
        )
    if clustering.centers.shape[1] != dataset.dim:
        raise StructuralError(
            f"centers have dim {clustering.centers.shape[1]}, dataset has dim {dataset.dim}"
        )


def sse(dataset: Dataset, clustering: Clustering) -> float:
    """Sum of squared Euclidean distances from points to their assigned centers."""
    _check_consistent(dataset, clustering)
    diff = dataset.points - clustering.centers[clustering.assignment]
    return float(np.sum(diff * diff))


def load_metric(loads: Sequence[int], ideal: Rational) -> float:
    """Sum of squared deviations of cluster loads from the ideal load.

    Evaluated in exact rational arithmetic and rounded once at the end.
    """
    if len(loads) == 0:
        raise ConfigError("loads must be nonempty")
    ideal_f = Fraction(ideal)
    total = Fraction(0)
    for l in loads:
        d = Fraction(int(l)) - ideal_f
        total += d * d
    return float(total)


def improvement_pct(initial: float, final: float) -> float:
    """Percent improvement of ``final`` over ``initial``; positive is better."""
    if initial <= 0:
        raise ConfigError(f"initial value must be positive, got {initial}")
    return 100.0 * (initial - final) / initial


def objectives(dataset: Dataset, clustering: Clustering, ideal: Optional[Rational] = None) -> ObjectiveState:
    """Evaluate both objectives; ideal defaults to n/k of the clustering."""
    ideal_f = Fraction(ideal) if ideal is not None else ideal_load(dataset.n, clustering.k)
    return ObjectiveState(
        sse=sse(dataset, clustering),
        load_metric=load_metric(clustering.loads, ideal_f),
        ideal_load=ideal_f,
    )


def improvement_report(initial: ObjectiveState, final: ObjectiveState) -> ImprovementReport:
    """Improvements of ``final`` over ``initial`` for both objectives.

    A zero initial objective yields 0.0 when the final one is also zero
    (nothing to improve) and None otherwise (undefined percentage).
    """

    def one(a: float, b: float) -> Optional[float]:
        if a > 0:
            return improvement_pct(a, b)
        return 0.0 if b == 0 else None

    return ImprovementReport(
        sse_improvement_pct=one(initial.sse, final.sse),
        l_improvement_pct=one(initial.load_metric, final.load_metric),
    )
